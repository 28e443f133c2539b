//! Generalized Reed-Solomon generators, their (shifted) duals, and the
//! symplectic self-orthogonality test.

use crate::error::{Error, Result};
use crate::gf::{check_points, FMatrix, FieldContext};

/// Evaluation points with X-side multipliers `u` and Z-side multipliers `v`
/// making the `l1`-shifted u-code dual to the `l2`-shifted v-code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvalFrame {
    pub ctx: FieldContext,
    pub points: Vec<u64>,
    pub u: Vec<u64>,
    pub v: Vec<u64>,
    pub shift_l1: u64,
    pub shift_l2: u64,
}

impl EvalFrame {
    pub fn new(
        ctx: FieldContext,
        points: Vec<u64>,
        u: Vec<u64>,
        shift_l1: u64,
        shift_l2: u64,
    ) -> Result<Self> {
        let v = shifted_dual_multipliers(&ctx, &points, &u, shift_l1, shift_l2)?;
        Ok(Self {
            ctx,
            points,
            u,
            v,
            shift_l1,
            shift_l2,
        })
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }
}

/// `prod_{j != i} (a_j - a_i)` for every `i`.
fn pairwise_products(ctx: &FieldContext, points: &[u64]) -> Vec<u64> {
    (0..points.len())
        .map(|i| {
            points
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(1, |acc, (_, &aj)| ctx.mul(acc, ctx.sub(aj, points[i])))
        })
        .collect()
}

fn check_distinct(ctx: &FieldContext, points: &[u64]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for &a in points {
        if !seen.insert(a % ctx.modulus()) {
            return Err(Error::DuplicatePoint(a % ctx.modulus()));
        }
    }
    Ok(())
}

pub fn dual_multipliers(ctx: &FieldContext, points: &[u64], u: &[u64]) -> Result<Vec<u64>> {
    if u.len() != points.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} multipliers for {} points",
            u.len(),
            points.len()
        )));
    }
    check_distinct(ctx, points)?;
    pairwise_products(ctx, points)
        .into_iter()
        .zip(u)
        .map(|(prod, &ui)| ctx.inv(ctx.mul(ui, prod)))
        .collect()
}

pub fn shifted_dual_multipliers(
    ctx: &FieldContext,
    points: &[u64],
    u: &[u64],
    l1: u64,
    l2: u64,
) -> Result<Vec<u64>> {
    check_points(ctx, points)?;
    let base = dual_multipliers(ctx, points, u)?;
    base.into_iter()
        .zip(points)
        .map(|(vi, &a)| Ok(ctx.mul(vi, ctx.inv(ctx.pow(a, l1 + l2))?)))
        .collect()
}

/// `n x k` generator with entry `(i, j) = mult_i * a_i^(shift + j)`.
pub fn grs_generator(
    ctx: &FieldContext,
    points: &[u64],
    mult: &[u64],
    shift: u64,
    k: usize,
) -> FMatrix {
    let mut g = FMatrix::zeros(points.len(), k);
    for (i, (&a, &m)) in points.iter().zip(mult).enumerate() {
        for j in 0..k {
            g.set(i, j, ctx.mul(m, ctx.pow(a, shift + j as u64)));
        }
    }
    g
}

/// `J = [[0, I], [-I, 0]]` of size `2n`.
pub fn symplectic_form(ctx: &FieldContext, n: usize) -> FMatrix {
    let mut j = FMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j.set(i, n + i, 1);
        j.set(n + i, i, ctx.neg(1));
    }
    j
}

/// True iff `G^T J G = 0`.
pub fn sso_check(ctx: &FieldContext, g: &FMatrix) -> Result<bool> {
    if !g.rows().is_multiple_of(2) {
        return Err(Error::DimensionMismatch(format!(
            "{} rows is not 2N",
            g.rows()
        )));
    }
    let n = g.rows() / 2;
    let x = g.block(0, 0, n, g.cols());
    let z = g.block(n, 0, n, g.cols());
    let xz = x.transpose().mul(ctx, &z)?;
    let zx = z.transpose().mul(ctx, &x)?;
    Ok(xz == zx)
}
