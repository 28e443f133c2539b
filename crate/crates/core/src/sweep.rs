//! Parameter sweeps and their CSV renderings.

use num_rational::Ratio;
use rayon::prelude::*;

use crate::degree_tables::{
    build_cat, build_low_privacy, build_quantum_family, optimal_gasp, outer_sum, ExponentPlan,
    QuantumSpec,
};
use crate::error::Result;
use crate::feasibility::{check_plan, min_feasible_t, t_hat_estimate};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateRow {
    pub family: String,
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub n_classical: usize,
    /// `None` when the plan does not extend to two instances.
    pub n_quantum: Option<usize>,
}

impl RateRow {
    pub fn r_c(&self) -> Ratio<u64> {
        Ratio::new((self.k * self.l) as u64, self.n_classical as u64)
    }

    pub fn r_q(&self) -> Option<Ratio<u64>> {
        self.n_quantum
            .map(|n| Ratio::new((2 * self.k * self.l) as u64, n as u64))
    }

    pub fn ratio(&self) -> Option<Ratio<u64>> {
        self.r_q().map(|q| q / self.r_c())
    }
}

fn quantum_n(plan: &ExponentPlan) -> Option<usize> {
    let rep = check_plan(plan);
    rep.feasible.then_some(rep.n_servers)
}

/// Rate row for a plan compared against optimal GASP at the same `(K, L, T)`.
pub fn row_against_gasp(plan: &ExponentPlan) -> Result<RateRow> {
    let best = optimal_gasp(plan.k, plan.l, plan.t)?;
    Ok(RateRow {
        family: plan.family.tag().to_string(),
        k: plan.k,
        l: plan.l,
        t: plan.t,
        n_classical: best.n,
        n_quantum: quantum_n(plan),
    })
}

pub fn gasp_row(k: usize, l: usize, t: usize) -> Result<RateRow> {
    let best = optimal_gasp(k, l, t)?;
    let n_quantum = quantum_n(&best.plan).map(|_| best.n);
    Ok(RateRow {
        family: "gasp-r".into(),
        k,
        l,
        t,
        n_classical: best.n,
        n_quantum,
    })
}

pub fn cat_row(k: usize, l: usize, t: usize) -> Result<RateRow> {
    let plan = build_cat(k, l, t, None)?;
    let n = outer_sum(&plan).n_servers;
    Ok(RateRow {
        family: "cat".into(),
        k,
        l,
        t,
        n_classical: n,
        n_quantum: quantum_n(&plan),
    })
}

pub fn low_privacy_row(k: usize, l: usize, t: usize) -> Result<RateRow> {
    row_against_gasp(&build_low_privacy(k, l, t)?)
}

pub fn quantum_row(spec: QuantumSpec) -> Result<RateRow> {
    row_against_gasp(&build_quantum_family(spec)?)
}

/// Evaluates every point in parallel, drops the ones outside a family's
/// domain, and returns rows in a fixed order.
pub fn collect_rows<P, F>(points: Vec<P>, f: F) -> Vec<RateRow>
where
    P: Send,
    F: Fn(P) -> Result<RateRow> + Sync,
{
    let mut rows: Vec<RateRow> = points.into_par_iter().filter_map(|p| f(p).ok()).collect();
    rows.sort_by(|a, b| {
        (&a.family, a.k, a.l, a.t, a.n_quantum).cmp(&(&b.family, b.k, b.l, b.t, b.n_quantum))
    });
    rows.dedup();
    rows
}

fn frac(r: Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn decimal(r: Ratio<u64>) -> String {
    format!("{:.6}", *r.numer() as f64 / *r.denom() as f64)
}

fn csv_string(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub const RATE_HEADER: [&str; 10] = [
    "family",
    "K",
    "L",
    "T",
    "N_classical",
    "N_quantum",
    "R_C",
    "R_Q",
    "ratio",
    "ratio_decimal",
];

pub fn rates_csv(rows: &[RateRow]) -> String {
    let opt = |v: Option<String>| v.unwrap_or_default();
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.family.clone(),
                r.k.to_string(),
                r.l.to_string(),
                r.t.to_string(),
                r.n_classical.to_string(),
                opt(r.n_quantum.map(|n| n.to_string())),
                frac(r.r_c()),
                opt(r.r_q().map(frac)),
                opt(r.ratio().map(frac)),
                opt(r.ratio().map(decimal)),
            ]
        })
        .collect();
    csv_string(&RATE_HEADER, body)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityRow {
    pub k: usize,
    pub l: usize,
    pub t_min: Option<usize>,
    pub t_hat: f64,
}

impl FeasibilityRow {
    pub fn delta(&self) -> Option<f64> {
        self.t_min.map(|t| t as f64 - self.t_hat)
    }
}

/// Minimum feasible `T` against the regression, for every `(K, L)` with
/// `L <= K`, `K` in `ks` and `L` in `ls`.
pub fn feasibility_rows(ks: &[usize], ls: Option<&[usize]>, t_max: usize) -> Vec<FeasibilityRow> {
    let mut points = Vec::new();
    for &k in ks {
        match ls {
            None => points.push((k, k)),
            Some(ls) => points.extend(ls.iter().filter(|&&l| l <= k && l >= 1).map(|&l| (k, l))),
        }
    }
    let mut rows: Vec<FeasibilityRow> = points
        .into_par_iter()
        .map(|(k, l)| FeasibilityRow {
            k,
            l,
            t_min: min_feasible_t(k, l, t_max),
            t_hat: t_hat_estimate(k, l),
        })
        .collect();
    rows.sort_by_key(|r| (r.k, r.l));
    rows
}

pub const FEASIBILITY_HEADER: [&str; 5] = ["K", "L", "T_min_bruteforce", "T_hat", "delta"];

pub fn feasibility_csv(rows: &[FeasibilityRow]) -> String {
    let body = rows
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                r.l.to_string(),
                r.t_min.map(|t| t.to_string()).unwrap_or_default(),
                format!("{:.6}", r.t_hat),
                r.delta().map(|d| format!("{d:.6}")).unwrap_or_default(),
            ]
        })
        .collect();
    csv_string(&FEASIBILITY_HEADER, body)
}
