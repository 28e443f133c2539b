use itertools::Itertools;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ProtocolConfig;
use crate::degree_tables::{outer_sum, Side};
use crate::error::{Error, Result};
use crate::feasibility::check_plan;
use crate::gf::{check_points, mat_rank, vandermonde, FMatrix, FieldContext};
use crate::grs::EvalFrame;

const AUDIT_STREAM: u64 = 0x5eed_a0d1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacyFailure {
    pub side: Side,
    pub servers: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrivacyReport {
    pub exhaustive: bool,
    pub subsets_checked: usize,
    pub failures: Vec<PrivacyFailure>,
}

impl PrivacyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `C(n, t)`, saturating at `cap + 1`.
fn binomial_capped(n: usize, t: usize, cap: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..t.min(n) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > cap as u128 {
            return cap + 1;
        }
    }
    if t > n {
        0
    } else {
        acc as usize
    }
}

/// `powers[s][c] = points[s]^exps[c]`, computed once per audit.
fn power_table(ctx: &FieldContext, points: &[u64], exps: &[u64]) -> Vec<Vec<u64>> {
    points
        .iter()
        .map(|&a| exps.iter().map(|&e| ctx.pow(a, e)).collect())
        .collect()
}

fn noise_rank_ok(ctx: &FieldContext, powers: &[Vec<u64>], servers: &[usize], width: usize) -> bool {
    let mut m = FMatrix::zeros(servers.len(), width);
    for (r, &s) in servers.iter().enumerate() {
        for (c, &v) in powers[s].iter().enumerate() {
            m.set(r, c, v);
        }
    }
    mat_rank(ctx, &m) == servers.len()
}

/// Every `T` colluding views must see the noise as a one-time pad: the
/// `T x (#noise)` evaluation matrix of each side has full row rank.
pub fn privacy_audit(cfg: &ProtocolConfig, points: &[u64]) -> PrivacyReport {
    let t = cfg.plan.t;
    let n = points.len();
    let sides: Vec<(Side, usize, Vec<Vec<u64>>)> = [
        (Side::Alpha, cfg.plan.noise_alpha_exponents()),
        (Side::Beta, cfg.plan.noise_beta_exponents()),
    ]
    .into_iter()
    .map(|(side, exps)| (side, exps.len(), power_table(&cfg.ctx, points, &exps)))
    .collect();
    let total = binomial_capped(n, t, cfg.audit_cap);
    let exhaustive = total <= cfg.audit_cap;
    let subsets: Vec<Vec<usize>> = if t == 0 || t > n {
        Vec::new()
    } else if exhaustive {
        (0..n).combinations(t).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ AUDIT_STREAM);
        (0..cfg.audit_cap)
            .map(|_| sample(&mut rng, n, t).into_iter().sorted().collect())
            .collect()
    };
    let mut failures = Vec::new();
    for s in &subsets {
        for (side, width, powers) in &sides {
            if !noise_rank_ok(&cfg.ctx, powers, s, *width) {
                failures.push(PrivacyFailure {
                    side: *side,
                    servers: s.clone(),
                });
            }
        }
    }
    if t > n {
        failures.push(PrivacyFailure {
            side: Side::Alpha,
            servers: (0..n).collect(),
        });
    }
    PrivacyReport {
        exhaustive,
        subsets_checked: subsets.len(),
        failures,
    }
}

fn lcc_shift(cfg: &ProtocolConfig) -> u64 {
    check_plan(&cfg.plan).lcc_run.first().copied().unwrap_or(0)
}

/// Accepts `points` only if they are distinct and nonzero, the generator on
/// the support is invertible, and the privacy audit passes.
fn accept(
    cfg: &ProtocolConfig,
    points: Vec<u64>,
    support: &[u64],
    shift: u64,
) -> Option<(EvalFrame, PrivacyReport)> {
    check_points(&cfg.ctx, &points).ok()?;
    let gen = vandermonde(&cfg.ctx, &points, support).ok()?;
    if mat_rank(&cfg.ctx, &gen) != support.len() {
        return None;
    }
    let report = privacy_audit(cfg, &points);
    if !report.passed() {
        return None;
    }
    let frame = EvalFrame::new(cfg.ctx, points, vec![1; support.len()], shift, shift).ok()?;
    Some((frame, report))
}

fn sample_audited<F>(cfg: &ProtocolConfig, mut draw: F) -> Result<(EvalFrame, usize, PrivacyReport)>
where
    F: FnMut(&mut ChaCha8Rng) -> Vec<u64>,
{
    let support = outer_sum(&cfg.plan).support;
    let n = support.len();
    let p = cfg.ctx.modulus();
    if n as u64 > p - 1 {
        return Err(Error::FieldTooSmall {
            p,
            needed: n,
            available: p - 1,
        });
    }
    let shift = lcc_shift(cfg);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 1..=cfg.max_resample {
        if let Some((frame, report)) = accept(cfg, draw(&mut rng), &support, shift) {
            return Ok((frame, attempt, report));
        }
    }
    Err(Error::ResampleExhausted(cfg.max_resample))
}

/// Draws candidate point sets from `draw` until one is accepted. Returns the
/// frame and the number of attempts used.
pub fn sample_frame_from<F>(cfg: &ProtocolConfig, draw: F) -> Result<(EvalFrame, usize)>
where
    F: FnMut(&mut ChaCha8Rng) -> Vec<u64>,
{
    sample_audited(cfg, draw).map(|(f, a, _)| (f, a))
}

/// The accepted frame together with the audit it passed.
pub(crate) fn sample_frame_audited(cfg: &ProtocolConfig) -> Result<(EvalFrame, PrivacyReport)> {
    let n = outer_sum(&cfg.plan).n_servers;
    let p = cfg.ctx.modulus();
    let found = if let Some(q) = cfg.plan.modulus_q {
        // cyclic plans evaluate on the subgroup of order q
        let omega = cfg
            .ctx
            .element_of_order(q)
            .ok_or_else(|| Error::ParamOutOfRange(format!("F_{p} has no element of order {q}")))?;
        let roots: Vec<u64> = (0..q).map(|i| cfg.ctx.pow(omega, i)).collect();
        if n as u64 == q {
            sample_audited(cfg, |_| roots.clone())
        } else {
            // fewer servers than roots: pick a subset of the subgroup
            sample_audited(cfg, |rng| {
                sample(rng, q as usize, n)
                    .into_iter()
                    .sorted()
                    .map(|i| roots[i])
                    .collect()
            })
        }
    } else {
        if n as u64 > p - 1 {
            return Err(Error::FieldTooSmall {
                p,
                needed: n,
                available: p - 1,
            });
        }
        sample_audited(cfg, |rng| {
            sample(rng, p as usize - 1, n)
                .into_iter()
                .map(|i| i as u64 + 1)
                .collect()
        })
    };
    found.map(|(f, _, r)| (f, r))
}

pub fn sample_frame(cfg: &ProtocolConfig) -> Result<EvalFrame> {
    sample_frame_audited(cfg).map(|(f, _)| f)
}
