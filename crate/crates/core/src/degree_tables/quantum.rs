//! Codes built directly for the entangled-server setting. All of them put
//! noise on the low exponents `[0:T-1]` of both polynomials and information
//! on the high halves.

use super::{ExponentPlan, Family};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumSpec {
    /// `K = L = T = n^2`.
    Square { n: u64 },
    /// `K = L = n^k`, `T = n^m`.
    Power { n: u64, k: u64, m: u64 },
    /// `K = L = n^k`, `T = K + r`.
    Additive { n: u64, k: u64, r: u64 },
    /// `K >= L = T`.
    Klt { k: u64, t: u64 },
    /// `K = T = n^k`, `L = n^l`.
    Kt { n: u64, k: u64, l: u64 },
    /// `L = n^l`, `K = T = L + r`.
    KtShift { n: u64, l: u64, r: u64 },
}

fn bad(msg: String) -> Error {
    Error::ParamOutOfRange(msg)
}

fn checked_pow(n: u64, e: u64) -> Result<u64> {
    u32::try_from(e)
        .ok()
        .and_then(|e| n.checked_pow(e))
        .filter(|&v| v < 1 << 20)
        .ok_or_else(|| bad(format!("{n}^{e} too large")))
}

fn assemble(
    k: u64,
    l: u64,
    t: u64,
    family: Family,
    alpha2: Vec<u64>,
    beta2: Vec<u64>,
) -> ExponentPlan {
    let (k, l, t) = (k as usize, l as usize, t as usize);
    let mut alpha: Vec<u64> = (0..t as u64).collect();
    alpha.extend(alpha2);
    let mut beta: Vec<u64> = (0..t as u64).collect();
    beta.extend(beta2);
    ExponentPlan {
        k,
        l,
        t,
        family,
        alpha,
        beta,
        info_alpha: (t..t + k).collect(),
        info_beta: (t..t + l).collect(),
        modulus_q: None,
    }
}

pub fn build_quantum_family(spec: QuantumSpec) -> Result<ExponentPlan> {
    match spec {
        QuantumSpec::Square { n } => {
            if n < 2 {
                return Err(bad(format!("square family needs n >= 2, got {n}")));
            }
            let mut plan = power(n, 2, 2)?;
            plan.family = Family::QfSquare { n };
            Ok(plan)
        }
        QuantumSpec::Power { n, k, m } => {
            if n < 2 || k < 2 || m < k {
                return Err(bad(format!(
                    "power family needs n >= 2 and m >= k >= 2, got ({n},{k},{m})"
                )));
            }
            power(n, k, m)
        }
        QuantumSpec::Additive { n, k, r } => {
            if n < 2 || k < 1 {
                return Err(bad(format!(
                    "additive family needs n >= 2, k >= 1, got ({n},{k})"
                )));
            }
            let kk = checked_pow(n, k)?;
            if r > kk * kk - kk {
                return Err(bad(format!(
                    "additive family needs r < {}",
                    kk * kk - kk + 1
                )));
            }
            let t = kk + r;
            let alpha2 = (0..kk).map(|i| kk * kk + r + i).collect();
            let beta2 = (0..kk).map(|i| 2 * kk + r - 1 + i * kk).collect();
            Ok(assemble(
                kk,
                kk,
                t,
                Family::QfAdditive { n, k, r },
                alpha2,
                beta2,
            ))
        }
        QuantumSpec::Klt { k, t } => {
            if t < 1 || k < t {
                return Err(bad(format!(
                    "KLT family needs K >= L = T >= 1, got K={k}, T={t}"
                )));
            }
            let alpha2 = (0..k).map(|i| 2 * t - 1 + i * t).collect();
            let beta2 = (0..t).map(|i| k * t + i).collect();
            Ok(assemble(k, t, t, Family::QfKLT, alpha2, beta2))
        }
        QuantumSpec::Kt { n, k, l } => {
            if n < 2 || l < 1 || k < l {
                return Err(bad(format!(
                    "KT family needs n >= 2 and k >= l >= 1, got ({n},{k},{l})"
                )));
            }
            let kk = checked_pow(n, k)?;
            let ll = checked_pow(n, l)?;
            let top = checked_pow(n, k + l)?;
            let alpha2 = (0..kk).map(|i| top + i).collect();
            let beta2 = (0..ll).map(|i| 2 * kk - 1 + i * kk).collect();
            Ok(assemble(
                kk,
                ll,
                kk,
                Family::QfKT { n, k, l },
                alpha2,
                beta2,
            ))
        }
        QuantumSpec::KtShift { n, l, r } => {
            if n < 2 || l < 1 || r < 1 {
                return Err(bad(format!(
                    "shifted KT family needs n >= 2, l >= 1, r >= 1, got ({n},{l},{r})"
                )));
            }
            let ll = checked_pow(n, l)?;
            let kk = ll + r;
            let alpha2 = (0..kk).map(|i| 2 * ll + r - 1 + i * ll).collect();
            let beta2 = (0..ll).map(|i| ll * ll + r * ll + r + i).collect();
            Ok(assemble(
                kk,
                ll,
                kk,
                Family::QfKTShift { n, l, r },
                alpha2,
                beta2,
            ))
        }
    }
}

fn power(n: u64, k: u64, m: u64) -> Result<ExponentPlan> {
    let kk = checked_pow(n, k)?;
    let t = checked_pow(n, m)?;
    let alpha2 = (0..kk).map(|i| t + kk * kk - kk + i).collect();
    let beta2 = (0..kk).map(|i| 2 * t - 1 + i * kk).collect();
    Ok(assemble(
        kk,
        kk,
        t,
        Family::QfPower { n, k, m },
        alpha2,
        beta2,
    ))
}
