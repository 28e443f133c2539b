//! Exponent plans for every code family and the outer-sum degree table.

mod classical;
mod low_privacy;
mod quantum;
mod record;

use std::collections::{BTreeSet, HashMap, HashSet};

pub use classical::{
    build_cat, build_dog, build_gasp_r, build_gasp_rs, gasp_server_formula, optimal_gasp,
    OptimalGasp,
};
pub use low_privacy::build_low_privacy;
pub use quantum::{build_quantum_family, QuantumSpec};
pub use record::{parse_record, to_record};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    GaspR {
        r: u64,
    },
    GaspRS {
        r: u64,
        s: u64,
    },
    DogRS {
        r: u64,
        s: u64,
    },
    CatX {
        x: u64,
        y: u64,
        k_star: u64,
        l_star: u64,
    },
    QfSquare {
        n: u64,
    },
    QfPower {
        n: u64,
        k: u64,
        m: u64,
    },
    QfAdditive {
        n: u64,
        k: u64,
        r: u64,
    },
    QfKLT,
    QfKT {
        n: u64,
        k: u64,
        l: u64,
    },
    QfKTShift {
        n: u64,
        l: u64,
        r: u64,
    },
    LpEqual {
        t_bar: u64,
    },
    LpGeneral {
        m: u64,
        delta: u64,
        t_bar: u64,
    },
}

impl Family {
    pub fn tag(&self) -> &'static str {
        match self {
            Family::GaspR { .. } => "gasp-r",
            Family::GaspRS { .. } => "gasp-rs",
            Family::DogRS { .. } => "dog",
            Family::CatX { .. } => "cat",
            Family::QfSquare { .. } => "qf-square",
            Family::QfPower { .. } => "qf-power",
            Family::QfAdditive { .. } => "qf-additive",
            Family::QfKLT => "qf-klt",
            Family::QfKT { .. } => "qf-kt",
            Family::QfKTShift { .. } => "qf-kt-shift",
            Family::LpEqual { .. } => "lp-equal",
            Family::LpGeneral { .. } => "lp-general",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, u64)> {
        match *self {
            Family::GaspR { r } => vec![("r", r)],
            Family::GaspRS { r, s } | Family::DogRS { r, s } => vec![("r", r), ("s", s)],
            Family::CatX {
                x,
                y,
                k_star,
                l_star,
            } => {
                vec![("x", x), ("y", y), ("kstar", k_star), ("lstar", l_star)]
            }
            Family::QfSquare { n } => vec![("n", n)],
            Family::QfPower { n, k, m } => vec![("n", n), ("k", k), ("m", m)],
            Family::QfAdditive { n, k, r } => vec![("n", n), ("k", k), ("r", r)],
            Family::QfKLT => vec![],
            Family::QfKT { n, k, l } => vec![("n", n), ("k", k), ("l", l)],
            Family::QfKTShift { n, l, r } => vec![("n", n), ("l", l), ("r", r)],
            Family::LpEqual { t_bar } => vec![("tbar", t_bar)],
            Family::LpGeneral { m, delta, t_bar } => {
                vec![("m", m), ("delta", delta), ("tbar", t_bar)]
            }
        }
    }

    pub fn from_parts(tag: &str, params: &HashMap<String, u64>) -> Result<Self> {
        let get = |k: &str| {
            params
                .get(k)
                .copied()
                .ok_or_else(|| Error::Parse(format!("family {tag} needs parameter {k}")))
        };
        Ok(match tag {
            "gasp-r" => Family::GaspR { r: get("r")? },
            "gasp-rs" => Family::GaspRS {
                r: get("r")?,
                s: get("s")?,
            },
            "dog" => Family::DogRS {
                r: get("r")?,
                s: get("s")?,
            },
            "cat" => Family::CatX {
                x: get("x")?,
                y: get("y")?,
                k_star: get("kstar")?,
                l_star: get("lstar")?,
            },
            "qf-square" => Family::QfSquare { n: get("n")? },
            "qf-power" => Family::QfPower {
                n: get("n")?,
                k: get("k")?,
                m: get("m")?,
            },
            "qf-additive" => Family::QfAdditive {
                n: get("n")?,
                k: get("k")?,
                r: get("r")?,
            },
            "qf-klt" => Family::QfKLT,
            "qf-kt" => Family::QfKT {
                n: get("n")?,
                k: get("k")?,
                l: get("l")?,
            },
            "qf-kt-shift" => Family::QfKTShift {
                n: get("n")?,
                l: get("l")?,
                r: get("r")?,
            },
            "lp-equal" => Family::LpEqual {
                t_bar: get("tbar")?,
            },
            "lp-general" => Family::LpGeneral {
                m: get("m")?,
                delta: get("delta")?,
                t_bar: get("tbar")?,
            },
            other => return Err(Error::Parse(format!("unknown family {other}"))),
        })
    }

    pub fn is_quantum_native(&self) -> bool {
        matches!(
            self,
            Family::QfSquare { .. }
                | Family::QfPower { .. }
                | Family::QfAdditive { .. }
                | Family::QfKLT
                | Family::QfKT { .. }
                | Family::QfKTShift { .. }
        )
    }

    pub fn is_low_privacy(&self) -> bool {
        matches!(self, Family::LpEqual { .. } | Family::LpGeneral { .. })
    }
}

/// Exponent vectors of one code together with the positions carrying data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentPlan {
    pub k: usize,
    pub l: usize,
    pub t: usize,
    pub family: Family,
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    pub info_alpha: Vec<usize>,
    pub info_beta: Vec<usize>,
    pub modulus_q: Option<u64>,
}

impl ExponentPlan {
    /// Checks index bookkeeping; distinctness is left to [`check_decodable`].
    pub fn validate(&self) -> Result<()> {
        if self.info_alpha.len() != self.k || self.info_beta.len() != self.l {
            return Err(Error::ParamOutOfRange(format!(
                "info sets have sizes {}/{}, expected {}/{}",
                self.info_alpha.len(),
                self.info_beta.len(),
                self.k,
                self.l
            )));
        }
        let in_range = |idx: &[usize], len: usize| {
            let set: HashSet<_> = idx.iter().collect();
            set.len() == idx.len() && idx.iter().all(|&i| i < len)
        };
        if !in_range(&self.info_alpha, self.alpha.len())
            || !in_range(&self.info_beta, self.beta.len())
        {
            return Err(Error::ParamOutOfRange(
                "info index out of range or repeated".into(),
            ));
        }
        if let Some(q) = self.modulus_q {
            if q == 0 {
                return Err(Error::ParamOutOfRange("cyclic modulus 0".into()));
            }
        }
        Ok(())
    }

    pub fn noise_alpha(&self) -> Vec<usize> {
        (0..self.alpha.len())
            .filter(|i| !self.info_alpha.contains(i))
            .collect()
    }

    pub fn noise_beta(&self) -> Vec<usize> {
        (0..self.beta.len())
            .filter(|i| !self.info_beta.contains(i))
            .collect()
    }

    pub fn noise_alpha_exponents(&self) -> Vec<u64> {
        self.noise_alpha()
            .into_iter()
            .map(|i| self.alpha[i])
            .collect()
    }

    pub fn noise_beta_exponents(&self) -> Vec<u64> {
        self.noise_beta()
            .into_iter()
            .map(|i| self.beta[i])
            .collect()
    }

    fn reduce(&self, e: u64) -> u64 {
        self.modulus_q.map_or(e, |q| e % q)
    }

    pub fn sum(&self, i: usize, j: usize) -> u64 {
        self.reduce(self.alpha[i] + self.beta[j])
    }

    /// Info sums in `(k, l)` row-major order: entry `k*L + l` carries `A_k B_l`.
    pub fn info_sums(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k * self.l);
        for &i in &self.info_alpha {
            for &j in &self.info_beta {
                out.push(self.sum(i, j));
            }
        }
        out
    }

    pub fn max_exponent(&self) -> u64 {
        let a = self.alpha.iter().max().copied().unwrap_or(0);
        let b = self.beta.iter().max().copied().unwrap_or(0);
        match self.modulus_q {
            Some(q) => q - 1,
            None => a + b,
        }
    }

    /// Local exponents of noise positions as seen through the plan
    /// (reduced modulo q for cyclic plans).
    pub fn reduced(&self, e: u64) -> u64 {
        self.reduce(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeTable {
    pub pm: Vec<Vec<u64>>,
    pub ul: BTreeSet<u64>,
    pub is_: BTreeSet<u64>,
    pub support: Vec<u64>,
    pub n_servers: usize,
}

pub fn outer_sum(plan: &ExponentPlan) -> DegreeTable {
    let pm: Vec<Vec<u64>> = (0..plan.alpha.len())
        .map(|i| (0..plan.beta.len()).map(|j| plan.sum(i, j)).collect())
        .collect();
    let all: BTreeSet<u64> = pm.iter().flatten().copied().collect();
    let ul: BTreeSet<u64> = plan.info_sums().into_iter().collect();
    let is_ = all.difference(&ul).copied().collect();
    let support: Vec<u64> = all.into_iter().collect();
    DegreeTable {
        n_servers: support.len(),
        pm,
        ul,
        is_,
        support,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decodability {
    Pass,
    /// An info sum coincides with another table entry.
    InfoCollision {
        info: (usize, usize),
        other: (usize, usize),
        value: u64,
    },
    /// Two alpha (or beta) exponents repeat.
    RepeatedExponent {
        side: Side,
        first: usize,
        second: usize,
        value: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Alpha,
    Beta,
}

impl Decodability {
    pub fn passed(&self) -> bool {
        matches!(self, Decodability::Pass)
    }
}

pub fn check_decodable(plan: &ExponentPlan) -> Decodability {
    for (side, v) in [(Side::Alpha, &plan.alpha), (Side::Beta, &plan.beta)] {
        let mut seen: HashMap<u64, usize> = HashMap::new();
        for (i, &e) in v.iter().enumerate() {
            let e = plan.reduce(e);
            if let Some(&first) = seen.get(&e) {
                return Decodability::RepeatedExponent {
                    side,
                    first,
                    second: i,
                    value: e,
                };
            }
            seen.insert(e, i);
        }
    }
    let mut owners: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for i in 0..plan.alpha.len() {
        for j in 0..plan.beta.len() {
            owners.entry(plan.sum(i, j)).or_default().push((i, j));
        }
    }
    for &i in &plan.info_alpha {
        for &j in &plan.info_beta {
            let v = plan.sum(i, j);
            if let Some(&other) = owners[&v].iter().find(|&&c| c != (i, j)) {
                return Decodability::InfoCollision {
                    info: (i, j),
                    other,
                    value: v,
                };
            }
        }
    }
    Decodability::Pass
}

/// First `len` terms of `[0..r-1, x..x+r-1, 2x..2x+r-1, ...]`.
pub fn gap_progression(len: usize, x: u64, r: u64) -> Vec<u64> {
    assert!(r >= 1, "chain length must be positive");
    (0..len as u64).map(|i| (i / r) * x + i % r).collect()
}

pub(crate) fn check_positive(k: usize, l: usize) -> Result<()> {
    if k == 0 || l == 0 {
        return Err(Error::ParamOutOfRange(format!(
            "K={k}, L={l} must be positive"
        )));
    }
    Ok(())
}
