//! Whether a classical degree table extends to the entangled-server setting.

use std::collections::BTreeSet;

use crate::degree_tables::{optimal_gasp, outer_sum, ExponentPlan};
use crate::error::{Error, Result};

/// Longest run of consecutive integers in `s`; ties go to the smallest start.
pub fn lcc(s: &BTreeSet<u64>) -> Vec<u64> {
    let mut best: (u64, usize) = (0, 0);
    let mut cur: Option<(u64, usize)> = None;
    let mut prev: Option<u64> = None;
    for &v in s {
        cur = match (cur, prev) {
            (Some((start, len)), Some(p)) if v == p + 1 => Some((start, len + 1)),
            _ => Some((v, 1)),
        };
        let c = cur.expect("set above");
        if c.1 > best.1 {
            best = c;
        }
        prev = Some(v);
    }
    (best.0..best.0 + best.1 as u64).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub feasible: bool,
    pub lcc_run: Vec<u64>,
    pub n_servers: usize,
    /// `ceil(N/2)`, the run length required.
    pub threshold: usize,
}

fn report(interference: &BTreeSet<u64>, n: usize) -> FeasibilityReport {
    let run = lcc(interference);
    let threshold = n.div_ceil(2);
    FeasibilityReport {
        feasible: run.len() >= threshold,
        lcc_run: run,
        n_servers: n,
        threshold,
    }
}

pub fn check_feasible(plan: &ExponentPlan, n_star: usize) -> FeasibilityReport {
    report(&outer_sum(plan).is_, n_star)
}

/// Variant used for the augmented-noise codes: the run is taken over the
/// table with the whole info block removed.
pub fn check_feasible_low_privacy(plan: &ExponentPlan) -> Result<FeasibilityReport> {
    if !plan.family.is_low_privacy() {
        return Err(Error::ParamOutOfRange(format!(
            "{} is not a low-privacy plan",
            plan.family.tag()
        )));
    }
    let table = outer_sum(plan);
    let info: BTreeSet<u64> = plan.info_sums().into_iter().collect();
    let rest: BTreeSet<u64> = table
        .support
        .iter()
        .copied()
        .filter(|e| !info.contains(e))
        .collect();
    Ok(report(&rest, table.n_servers))
}

/// Feasibility at the plan's own server count, choosing the variant by family.
pub fn check_plan(plan: &ExponentPlan) -> FeasibilityReport {
    if plan.family.is_low_privacy() {
        check_feasible_low_privacy(plan).expect("family checked")
    } else {
        check_feasible(plan, outer_sum(plan).n_servers)
    }
}

/// Smallest `T <= t_max` for which the optimal-r GASP code is feasible.
pub fn min_feasible_t(k: usize, l: usize, t_max: usize) -> Option<usize> {
    if k < l || l == 0 {
        return None;
    }
    (1..=t_max).find(|&t| {
        let best = optimal_gasp(k, l, t).expect("valid parameters");
        check_feasible(&best.plan, best.n).feasible
    })
}

/// Empirical fit for the minimum feasible `T`.
pub fn t_hat_estimate(k: usize, l: usize) -> f64 {
    let (k, l) = (k as f64, l as f64);
    if k == l {
        0.5 * k * k - 1e-3 * k + 0.772
    } else {
        -0.043 * l * l + 0.507 * k * l + 0.18 * k + 0.362 * l - 0.746
    }
}
