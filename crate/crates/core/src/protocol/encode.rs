use rand::Rng;

use super::ProtocolConfig;
use crate::error::{Error, Result};
use crate::gf::{FMatrix, FieldContext};
use crate::grs::EvalFrame;

/// Inputs and noise for one instance of the product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceData {
    pub a: FMatrix,
    pub b: FMatrix,
    /// One matrix per noise exponent of `alpha`, shaped like `A_k`.
    pub noise_a: Vec<FMatrix>,
    /// One matrix per noise exponent of `beta`, shaped like `B_l`.
    pub noise_b: Vec<FMatrix>,
}

fn random_matrix<R: Rng>(rng: &mut R, p: u64, rows: usize, cols: usize) -> FMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..p)).collect();
    FMatrix::from_vec(rows, cols, data).expect("sized above")
}

impl InstanceData {
    pub fn random<R: Rng>(cfg: &ProtocolConfig, rng: &mut R) -> Self {
        let p = cfg.ctx.modulus();
        let d = cfg.dims;
        let a = random_matrix(rng, p, d.rows_a, d.inner);
        let b = random_matrix(rng, p, d.inner, d.cols_b);
        Self::with_random_noise(cfg, a, b, rng)
    }

    /// Fixed inputs, fresh noise.
    pub fn with_random_noise<R: Rng>(
        cfg: &ProtocolConfig,
        a: FMatrix,
        b: FMatrix,
        rng: &mut R,
    ) -> Self {
        let p = cfg.ctx.modulus();
        let ((ar, ac), (br, bc)) = cfg.block_shapes();
        let noise_a = (0..cfg.plan.noise_alpha().len())
            .map(|_| random_matrix(rng, p, ar, ac))
            .collect();
        let noise_b = (0..cfg.plan.noise_beta().len())
            .map(|_| random_matrix(rng, p, br, bc))
            .collect();
        Self {
            a,
            b,
            noise_a,
            noise_b,
        }
    }

    /// `A` cut into `K` row bands.
    pub fn a_blocks(&self, k: usize) -> Vec<FMatrix> {
        let h = self.a.rows() / k;
        (0..k)
            .map(|i| self.a.block(i * h, 0, h, self.a.cols()))
            .collect()
    }

    /// `B` cut into `L` column bands.
    pub fn b_blocks(&self, l: usize) -> Vec<FMatrix> {
        let w = self.b.cols() / l;
        (0..l)
            .map(|j| self.b.block(0, j * w, self.b.rows(), w))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Share {
    pub f: FMatrix,
    pub g: FMatrix,
}

fn evaluate(
    ctx: &FieldContext,
    point: u64,
    terms: &[(&FMatrix, u64)],
    shape: (usize, usize),
) -> FMatrix {
    let mut acc = FMatrix::zeros(shape.0, shape.1);
    for &(m, e) in terms {
        acc = acc
            .add(ctx, &m.scale(ctx, ctx.pow(point, e)))
            .expect("shapes checked");
    }
    acc
}

pub fn encode_shares(
    cfg: &ProtocolConfig,
    frame: &EvalFrame,
    data: &InstanceData,
) -> Result<Vec<Share>> {
    let plan = &cfg.plan;
    let d = cfg.dims;
    let ((ar, ac), (br, bc)) = cfg.block_shapes();
    let bad_noise = data.noise_a.len() != plan.noise_alpha().len()
        || data.noise_b.len() != plan.noise_beta().len()
        || data.noise_a.iter().any(|m| m.shape() != (ar, ac))
        || data.noise_b.iter().any(|m| m.shape() != (br, bc));
    if data.a.shape() != (d.rows_a, d.inner) || data.b.shape() != (d.inner, d.cols_b) || bad_noise {
        return Err(Error::ShapeMismatch(format!(
            "inputs {:?} x {:?} with {}/{} noise terms do not fit {:?}",
            data.a.shape(),
            data.b.shape(),
            data.noise_a.len(),
            data.noise_b.len(),
            d
        )));
    }
    let a_blocks = data.a_blocks(plan.k);
    let b_blocks = data.b_blocks(plan.l);
    let mut f_terms: Vec<(&FMatrix, u64)> = plan
        .info_alpha
        .iter()
        .zip(&a_blocks)
        .map(|(&i, m)| (m, plan.alpha[i]))
        .collect();
    f_terms.extend(
        plan.noise_alpha()
            .into_iter()
            .zip(&data.noise_a)
            .map(|(i, m)| (m, plan.alpha[i])),
    );
    let mut g_terms: Vec<(&FMatrix, u64)> = plan
        .info_beta
        .iter()
        .zip(&b_blocks)
        .map(|(&j, m)| (m, plan.beta[j]))
        .collect();
    g_terms.extend(
        plan.noise_beta()
            .into_iter()
            .zip(&data.noise_b)
            .map(|(j, m)| (m, plan.beta[j])),
    );

    Ok(frame
        .points
        .iter()
        .map(|&a| Share {
            f: evaluate(&cfg.ctx, a, &f_terms, (ar, ac)),
            g: evaluate(&cfg.ctx, a, &g_terms, (br, bc)),
        })
        .collect())
}

pub fn server_compute(ctx: &FieldContext, share: &Share) -> Result<FMatrix> {
    share.f.mul(ctx, &share.g).map_err(|_| {
        Error::ShapeMismatch(format!(
            "cannot multiply {:?} by {:?}",
            share.f.shape(),
            share.g.shape()
        ))
    })
}
