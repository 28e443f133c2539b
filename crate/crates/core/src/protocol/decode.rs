use super::ProtocolConfig;
use crate::degree_tables::outer_sum;
use crate::error::{Error, Result};
use crate::feasibility::check_plan;
use crate::gf::{mat_solve, vandermonde, FMatrix};
use crate::grs::{sso_check, EvalFrame};
use crate::nsumbox::{apply_box, build_transfer, TransferMatrix};

fn check_responses(n: usize, responses: &[FMatrix], shape: (usize, usize)) -> Result<()> {
    if responses.len() != n || responses.iter().any(|r| r.shape() != shape) {
        return Err(Error::ShapeMismatch(format!(
            "expected {n} responses of shape {shape:?}, got {}",
            responses.len()
        )));
    }
    Ok(())
}

/// Places the block for `(k, l)` (row-major index `idx`) into the product.
fn assemble(
    k: usize,
    l: usize,
    shape: (usize, usize),
    mut block: impl FnMut(usize) -> FMatrix,
) -> FMatrix {
    let (br, bc) = shape;
    let mut out = FMatrix::zeros(k * br, l * bc);
    for i in 0..k {
        for j in 0..l {
            let b = block(i * l + j);
            for r in 0..br {
                for c in 0..bc {
                    out.set(i * br + r, j * bc + c, b.get(r, c));
                }
            }
        }
    }
    out
}

/// Interpolates every response entry on the support and reads off the
/// info coefficients.
pub fn decode_classical(
    cfg: &ProtocolConfig,
    frame: &EvalFrame,
    responses: &[FMatrix],
) -> Result<FMatrix> {
    let plan = &cfg.plan;
    let support = outer_sum(plan).support;
    let ((ar, _), (_, bc)) = cfg.block_shapes();
    check_responses(support.len(), responses, (ar, bc))?;
    let gen = vandermonde(&cfg.ctx, &frame.points, &support)?;
    let mut rhs = FMatrix::zeros(support.len(), ar * bc);
    for (n, r) in responses.iter().enumerate() {
        for (c, &v) in r.data().iter().enumerate() {
            rhs.set(n, c, v);
        }
    }
    let coeffs = mat_solve(&cfg.ctx, &gen, &rhs).map_err(|_| Error::SingularGenerator)?;
    let sums = plan.info_sums();
    Ok(assemble(plan.k, plan.l, (ar, bc), |idx| {
        let row = support
            .binary_search(&sums[idx])
            .expect("info sums lie in the support");
        FMatrix::from_vec(ar, bc, coeffs.row(row).to_vec()).expect("sized")
    }))
}

/// Column layout and transfer matrix used by the two-instance decoder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumLayout {
    /// Exponent of each column of `Q`: run, then info sums, then the rest.
    pub columns: Vec<u64>,
    pub run_len: usize,
    pub transfer: TransferMatrix,
    pub sso: bool,
}

impl QuantumLayout {
    fn floor(&self) -> usize {
        self.columns.len() / 2
    }

    /// Output index of info product `idx` for instance 1 and instance 2.
    pub fn info_outputs(&self, idx: usize) -> (usize, usize) {
        let c = self.run_len + idx;
        (c - self.floor(), c)
    }
}

pub fn quantum_layout(cfg: &ProtocolConfig, frame: &EvalFrame) -> Result<QuantumLayout> {
    let rep = check_plan(&cfg.plan);
    if !rep.feasible {
        return Err(Error::NotFeasible {
            run: rep.lcc_run.len(),
            needed: rep.threshold,
        });
    }
    let table = outer_sum(&cfg.plan);
    let n = table.n_servers;
    let sums = cfg.plan.info_sums();
    let mut columns = rep.lcc_run.clone();
    columns.extend(&sums);
    columns.extend(
        table
            .support
            .iter()
            .filter(|e| !columns.contains(e))
            .collect::<Vec<_>>(),
    );
    debug_assert_eq!(columns.len(), n);

    let ctx = &cfg.ctx;
    let q = vandermonde(ctx, &frame.points, &columns)?;
    let du = FMatrix::diag(&frame.u).mul(ctx, &q)?;
    let dv = FMatrix::diag(&frame.v).mul(ctx, &q)?;
    let (lo, hi) = (n / 2, n - n / 2);
    let cols = |a: usize, b: usize| (a..b).collect::<Vec<_>>();
    let g = du
        .select_columns(&cols(0, lo))
        .block_diag(&dv.select_columns(&cols(0, hi)));
    let h = du
        .select_columns(&cols(lo, n))
        .block_diag(&dv.select_columns(&cols(hi, n)));
    let sso = sso_check(ctx, &g)?;
    let transfer = build_transfer(ctx, &g, &h)?;
    Ok(QuantumLayout {
        columns,
        run_len: rep.lcc_run.len(),
        transfer,
        sso,
    })
}

/// Both instances recovered from one round of `N` two-operand responses:
/// instance 1 on the X slots, instance 2 on the Z slots.
pub fn decode_quantum(
    cfg: &ProtocolConfig,
    frame: &EvalFrame,
    responses_1: &[FMatrix],
    responses_2: &[FMatrix],
) -> Result<(FMatrix, FMatrix)> {
    let layout = quantum_layout(cfg, frame)?;
    let n = layout.columns.len();
    let ((ar, _), (_, bc)) = cfg.block_shapes();
    check_responses(n, responses_1, (ar, bc))?;
    check_responses(n, responses_2, (ar, bc))?;
    let ctx = &cfg.ctx;

    // y for every entry of the block products
    let mut outputs = Vec::with_capacity(ar * bc);
    for e in 0..ar * bc {
        let mut x = Vec::with_capacity(2 * n);
        x.extend((0..n).map(|s| ctx.mul(frame.u[s], responses_1[s].data()[e])));
        x.extend((0..n).map(|s| ctx.mul(frame.v[s], responses_2[s].data()[e])));
        outputs.push(apply_box(ctx, &layout.transfer, &x)?);
    }
    let (outputs, layout) = (&outputs, &layout);
    let block = |which: usize| {
        move |idx: usize| {
            let (o1, o2) = layout.info_outputs(idx);
            let o = if which == 0 { o1 } else { o2 };
            let data = outputs.iter().map(|y| y[o]).collect();
            FMatrix::from_vec(ar, bc, data).expect("sized")
        }
    };
    let (k, l) = (cfg.plan.k, cfg.plan.l);
    Ok((
        assemble(k, l, (ar, bc), block(0)),
        assemble(k, l, (ar, bc), block(1)),
    ))
}
