//! End-to-end simulation of one protocol run.

mod decode;
mod encode;
mod frame;
mod transcript;

use num_rational::Ratio;

pub use decode::{decode_classical, decode_quantum, quantum_layout, QuantumLayout};
pub use encode::{encode_shares, server_compute, InstanceData, Share};
pub use frame::{privacy_audit, sample_frame, sample_frame_from, PrivacyFailure, PrivacyReport};
pub use transcript::{simulate, InstanceTranscript, SimulationOutcome, Transcript};

use crate::degree_tables::{outer_sum, ExponentPlan};
use crate::error::{Error, Result};
use crate::feasibility::check_plan;
use crate::gf::{next_prime, next_prime_one_mod, FieldContext};

pub const DEFAULT_MAX_RESAMPLE: usize = 64;
pub const DEFAULT_AUDIT_CAP: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Classical,
    Quantum,
}

impl Mode {
    pub fn instances(self) -> usize {
        match self {
            Mode::Classical => 1,
            Mode::Quantum => 2,
        }
    }
}

/// `A` is `rows_a x inner`, `B` is `inner x cols_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatrixDims {
    pub rows_a: usize,
    pub inner: usize,
    pub cols_b: usize,
}

impl MatrixDims {
    /// Dimensions giving `A_k` of shape `a_rows x inner` and `B_l` of shape
    /// `inner x b_cols`.
    pub fn from_blocks(k: usize, l: usize, a_rows: usize, inner: usize, b_cols: usize) -> Self {
        Self {
            rows_a: k * a_rows,
            inner,
            cols_b: l * b_cols,
        }
    }
}

#[derive(Debug, Clone)]
pub struct ProtocolConfig {
    pub plan: ExponentPlan,
    pub ctx: FieldContext,
    pub dims: MatrixDims,
    pub mode: Mode,
    pub seed: u64,
    pub max_resample: usize,
    pub audit_cap: usize,
}

/// Smallest prime `>= max(N+2, max exponent + 2, floor)`; for cyclic plans
/// the smallest prime `≡ 1 (mod q)` not below `floor`.
pub fn default_prime(plan: &ExponentPlan, floor: Option<u64>) -> u64 {
    let floor = floor.unwrap_or(0);
    match plan.modulus_q {
        Some(q) => next_prime_one_mod(q, floor),
        None => {
            let n = outer_sum(plan).n_servers as u64;
            next_prime((n + 2).max(plan.max_exponent() + 2).max(floor))
        }
    }
}

impl ProtocolConfig {
    pub fn new(
        plan: ExponentPlan,
        ctx: FieldContext,
        dims: MatrixDims,
        mode: Mode,
        seed: u64,
    ) -> Result<Self> {
        plan.validate()?;
        if !dims.rows_a.is_multiple_of(plan.k) || !dims.cols_b.is_multiple_of(plan.l) {
            return Err(Error::ShapeMismatch(format!(
                "rows_A={} must be divisible by K={} and cols_B={} by L={}",
                dims.rows_a, plan.k, dims.cols_b, plan.l
            )));
        }
        if mode == Mode::Quantum {
            let rep = check_plan(&plan);
            if !rep.feasible {
                return Err(Error::NotFeasible {
                    run: rep.lcc_run.len(),
                    needed: rep.threshold,
                });
            }
        }
        Ok(Self {
            plan,
            ctx,
            dims,
            mode,
            seed,
            max_resample: DEFAULT_MAX_RESAMPLE,
            audit_cap: DEFAULT_AUDIT_CAP,
        })
    }

    /// Uses [`default_prime`] with an optional lower bound.
    pub fn with_default_prime(
        plan: ExponentPlan,
        dims: MatrixDims,
        mode: Mode,
        seed: u64,
        prime_floor: Option<u64>,
    ) -> Result<Self> {
        let ctx = FieldContext::new(default_prime(&plan, prime_floor))?;
        Self::new(plan, ctx, dims, mode, seed)
    }

    /// `(rows, cols)` of each `A_k` and each `B_l`.
    pub fn block_shapes(&self) -> ((usize, usize), (usize, usize)) {
        let d = self.dims;
        (
            (d.rows_a / self.plan.k, d.inner),
            (d.inner, d.cols_b / self.plan.l),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RateReport {
    pub rate: Ratio<u64>,
    pub n: usize,
    pub instances: usize,
}

/// `R = m K L / N`.
pub fn rate_report(plan: &ExponentPlan, mode: Mode) -> RateReport {
    let n = outer_sum(plan).n_servers;
    let m = mode.instances();
    RateReport {
        rate: Ratio::new((m * plan.k * plan.l) as u64, n as u64),
        n,
        instances: m,
    }
}

pub fn rate_ratio(quantum: &RateReport, classical: &RateReport) -> Ratio<u64> {
    quantum.rate / classical.rate
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_tables::{
        build_cat, build_gasp_r, build_quantum_family, optimal_gasp, QuantumSpec,
    };

    #[test]
    fn rate_examples() {
        let g = optimal_gasp(4, 4, 4).unwrap().plan;
        assert_eq!(rate_report(&g, Mode::Classical).rate, Ratio::new(16, 36));

        let q = build_quantum_family(QuantumSpec::Klt { k: 3, t: 2 }).unwrap();
        let rq = rate_report(&q, Mode::Quantum);
        assert_eq!(rq.rate, Ratio::new(4, 5));
        let c = rate_report(&optimal_gasp(3, 2, 2).unwrap().plan, Mode::Classical);
        assert_eq!(c.n, 14);
        let ratio = rate_ratio(&rq, &c);
        assert_eq!(
            format!("{:.2}", *ratio.numer() as f64 / *ratio.denom() as f64),
            "1.87"
        );

        let q = build_quantum_family(QuantumSpec::Kt { n: 2, k: 3, l: 1 }).unwrap();
        let c = rate_report(&optimal_gasp(8, 2, 8).unwrap().plan, Mode::Classical);
        assert_eq!(
            rate_ratio(&rate_report(&q, Mode::Quantum), &c),
            Ratio::from_integer(2)
        );
    }

    #[test]
    fn quantum_rate_doubles_classical() {
        let p = build_gasp_r(2, 2, 3, 2).unwrap();
        let q = rate_report(&p, Mode::Quantum);
        assert_eq!(q.rate, rate_report(&p, Mode::Classical).rate * 2);
        assert_eq!(q.rate, Ratio::new(8, 13));
    }

    #[test]
    fn default_primes() {
        let p = build_gasp_r(2, 2, 3, 2).unwrap();
        assert_eq!(default_prime(&p, None), 17);
        assert_eq!(default_prime(&p, Some(100)), 101);
        let c = build_cat(2, 2, 2, None).unwrap();
        assert_eq!(default_prime(&c, None), 11);
        assert_eq!(default_prime(&c, Some(12)), 31);
    }

    #[test]
    fn config_validation() {
        let dims = MatrixDims::from_blocks(2, 2, 1, 1, 1);
        let p = build_gasp_r(2, 2, 1, 1).unwrap();
        assert!(matches!(
            ProtocolConfig::with_default_prime(p.clone(), dims, Mode::Quantum, 0, None),
            Err(Error::NotFeasible { run: 3, needed: 4 })
        ));
        assert!(
            ProtocolConfig::with_default_prime(p.clone(), dims, Mode::Classical, 0, None).is_ok()
        );
        let bad = MatrixDims {
            rows_a: 3,
            inner: 1,
            cols_b: 2,
        };
        assert!(matches!(
            ProtocolConfig::with_default_prime(p, bad, Mode::Classical, 0, None),
            Err(Error::ShapeMismatch(_))
        ));
    }
}
