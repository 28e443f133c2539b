//! Arithmetic and dense linear algebra over a prime field F_p.
//!
//! Elements are plain `u64` values kept canonical in `[0, p)`. The modulus is
//! capped below 2^31 so a product of two elements always fits in 64 bits.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

const MODULUS_CAP: u64 = 1 << 31;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest odd prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n.max(3);
    while !is_prime(c) {
        c += 1;
    }
    c
}

/// Smallest prime `p >= floor` with `p ≡ 1 (mod q)`.
pub fn next_prime_one_mod(q: u64, floor: u64) -> u64 {
    let mut c = q + 1;
    while c < floor || !is_prime(c) || c < 3 {
        c += q;
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldContext {
    p: u64,
}

impl FieldContext {
    pub fn new(p: u64) -> Result<Self> {
        if !(3..MODULUS_CAP).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Canonical representative of a signed integer.
    pub fn elem(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.p;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> Result<u64> {
        if a.is_multiple_of(self.p) {
            return Err(Error::InversionOfZero);
        }
        Ok(self.pow(a, self.p - 2))
    }

    /// Dispatch form: binary ops read `operands[0..2]`, `Inv` reads
    /// `operands[0]`, `Pow` reads base and exponent.
    pub fn apply(&self, op: FieldOp, operands: &[u64]) -> Result<u64> {
        let arg = |i: usize| {
            operands
                .get(i)
                .copied()
                .ok_or_else(|| Error::DimensionMismatch(format!("{op:?} needs operand {i}")))
        };
        Ok(match op {
            FieldOp::Add => self.add(arg(0)? % self.p, arg(1)? % self.p),
            FieldOp::Sub => self.sub(arg(0)? % self.p, arg(1)? % self.p),
            FieldOp::Mul => self.mul(arg(0)? % self.p, arg(1)? % self.p),
            FieldOp::Inv => self.inv(arg(0)?)?,
            FieldOp::Pow => self.pow(arg(0)?, arg(1)?),
        })
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let mut k = self.p - 1;
        for f in prime_factors(self.p - 1) {
            while k.is_multiple_of(f) && self.pow(a, k / f) == 1 {
                k /= f;
            }
        }
        Some(k)
    }

    /// Element of multiplicative order exactly `q`: the first `a^((p-1)/q)`,
    /// `a = 1, 2, ...`, that has it.
    pub fn element_of_order(&self, q: u64) -> Option<u64> {
        if q == 0 || !(self.p - 1).is_multiple_of(q) {
            return None;
        }
        (1..self.p)
            .map(|a| self.pow(a, (self.p - 1) / q))
            .find(|&x| self.order(x) == Some(q))
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for FMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FMatrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(u64::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<u64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        })
    }

    pub fn column_vector(v: &[u64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn diag(v: &[u64]) -> Self {
        let mut m = Self::zeros(v.len(), v.len());
        for (i, &x) in v.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn mul(&self, ctx: &FieldContext, other: &FMatrix) -> Result<FMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let p = ctx.modulus();
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, ctx: &FieldContext, other: &FMatrix) -> Result<FMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} plus {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ctx.add(a, b))
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, ctx: &FieldContext, s: u64) -> FMatrix {
        let data = self.data.iter().map(|&a| ctx.mul(a, s)).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> FMatrix {
        let mut out = Self::zeros(self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> FMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            data.extend_from_slice(self.row(r));
        }
        Self {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    /// Rectangular sub-block `[r0, r0+nr) x [c0, c0+nc)`.
    pub fn block(&self, r0: usize, c0: usize, nr: usize, nc: usize) -> FMatrix {
        let mut out = Self::zeros(nr, nc);
        for r in 0..nr {
            for c in 0..nc {
                out.set(r, c, self.get(r0 + r, c0 + c));
            }
        }
        out
    }

    pub fn hstack(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut out = Self::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &FMatrix) -> Result<FMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn block_diag(&self, other: &FMatrix) -> FMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c));
            }
        }
        out
    }
}

/// Gauss-Jordan reduction of `m` in place, pivoting on the lowest row index
/// with a nonzero entry. Only the first `pivot_cols` columns are pivoted.
/// Returns the pivot columns in order.
fn reduce(ctx: &FieldContext, m: &mut FMatrix, pivot_cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
            continue;
        };
        if pr != row {
            for c in 0..m.cols {
                m.data.swap(pr * m.cols + c, row * m.cols + c);
            }
        }
        let inv = ctx.inv(m.get(row, col)).expect("pivot is nonzero");
        for c in 0..m.cols {
            let v = ctx.mul(m.get(row, c), inv);
            m.set(row, c, v);
        }
        for r in 0..m.rows {
            let f = m.get(r, col);
            if r == row || f == 0 {
                continue;
            }
            for c in 0..m.cols {
                let v = ctx.sub(m.get(r, c), ctx.mul(f, m.get(row, c)));
                m.set(r, c, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solves `A X = B` for square `A`.
pub fn mat_solve(ctx: &FieldContext, a: &FMatrix, b: &FMatrix) -> Result<FMatrix> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            a.rows, a.cols
        )));
    }
    if b.rows != a.rows {
        return Err(Error::DimensionMismatch("right-hand side row count".into()));
    }
    let n = a.rows;
    let mut aug = a.hstack(b)?;
    if reduce(ctx, &mut aug, n).len() < n {
        return Err(Error::SingularMatrix);
    }
    Ok(aug.block(0, n, n, b.cols))
}

pub fn mat_inverse(ctx: &FieldContext, a: &FMatrix) -> Result<FMatrix> {
    mat_solve(ctx, a, &FMatrix::identity(a.rows))
}

pub fn mat_rank(ctx: &FieldContext, a: &FMatrix) -> usize {
    let mut m = a.clone();
    reduce(ctx, &mut m, a.cols).len()
}

/// Entry `(i, j)` is `points[i]^exponents[j]`.
pub fn vandermonde(ctx: &FieldContext, points: &[u64], exponents: &[u64]) -> Result<FMatrix> {
    check_points(ctx, points)?;
    let mut seen = HashSet::new();
    if let Some(&e) = exponents.iter().find(|&&e| !seen.insert(e)) {
        return Err(Error::DuplicateExponent(e));
    }
    let mut m = FMatrix::zeros(points.len(), exponents.len());
    for (i, &a) in points.iter().enumerate() {
        for (j, &e) in exponents.iter().enumerate() {
            m.set(i, j, ctx.pow(a, e));
        }
    }
    Ok(m)
}

/// Points must be nonzero and pairwise distinct in F_p.
pub fn check_points(ctx: &FieldContext, points: &[u64]) -> Result<()> {
    let mut seen = HashSet::new();
    for &a in points {
        let a = a % ctx.modulus();
        if a == 0 {
            return Err(Error::ZeroPoint);
        }
        if !seen.insert(a) {
            return Err(Error::DuplicatePoint(a));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u64) -> FieldContext {
        FieldContext::new(p).unwrap()
    }

    #[test]
    fn scalar_examples() {
        assert_eq!(f(11).inv(2).unwrap(), 6);
        assert_eq!(f(5).pow(2, 0), 1);
        assert_eq!(f(5).mul(3, 4), 2);
        assert_eq!(f(5).apply(FieldOp::Mul, &[3, 4]).unwrap(), 2);
        assert_eq!(f(11).apply(FieldOp::Inv, &[2]).unwrap(), 6);
        assert_eq!(f(7).inv(0), Err(Error::InversionOfZero));
        assert_eq!(f(7).apply(FieldOp::Inv, &[14]), Err(Error::InversionOfZero));
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldContext::new(2).is_err());
        assert!(FieldContext::new(9).is_err());
        assert!(FieldContext::new(4_294_967_291).is_err());
        assert!(FieldContext::new(2_147_483_647).is_ok());
    }

    #[test]
    fn prime_helpers() {
        assert_eq!(next_prime(14), 17);
        assert_eq!(next_prime(0), 3);
        assert_eq!(next_prime_one_mod(10, 0), 11);
        assert_eq!(next_prime_one_mod(13, 0), 53);
        assert_eq!(f(11).element_of_order(10), Some(2));
        assert_eq!(f(11).element_of_order(3), None);
        let big = f(next_prime_one_mod(29, 1 << 30));
        let w = big.element_of_order(29).unwrap();
        assert_eq!(big.pow(w, 29), 1);
        assert_ne!(w, 1);
    }

    #[test]
    fn order_matches_brute_force() {
        for p in [7u64, 11, 13, 31, 101] {
            let c = f(p);
            for a in 1..p {
                let brute = (1..p).find(|&k| c.pow(a, k) == 1);
                assert_eq!(c.order(a), brute, "p={p}, a={a}");
            }
        }
    }

    #[test]
    fn solve_examples() {
        let c = f(5);
        let b = FMatrix::column_vector(&[3, 4]);
        assert_eq!(mat_solve(&c, &FMatrix::identity(2), &b).unwrap(), b);
        let a = FMatrix::from_rows(&[vec![1, 1], vec![1, 2]]).unwrap();
        let x = mat_solve(&c, &a, &FMatrix::column_vector(&[0, 1])).unwrap();
        assert_eq!(x.column(0), vec![4, 1]);
        assert_eq!(a.mul(&c, &x).unwrap().column(0), vec![0, 1]);
        let s = FMatrix::from_rows(&[vec![1, 2], vec![2, 4]]).unwrap();
        assert_eq!(mat_solve(&c, &s, &b), Err(Error::SingularMatrix));
        assert_eq!(mat_rank(&c, &s), 1);
    }

    #[test]
    fn vandermonde_examples() {
        let v = vandermonde(&f(11), &[1, 2], &[0, 1]).unwrap();
        assert_eq!(v.to_rows(), vec![vec![1, 1], vec![1, 2]]);
        let v = vandermonde(&f(11), &[2], &[0, 1, 2, 3]).unwrap();
        assert_eq!(v.to_rows(), vec![vec![1, 2, 4, 8]]);
        let v = vandermonde(&f(13), &[3, 4, 5], &[0, 2]).unwrap();
        assert_eq!(v.to_rows(), vec![vec![1, 9], vec![1, 3], vec![1, 12]]);
        assert_eq!(
            vandermonde(&f(13), &[3, 3], &[0]),
            Err(Error::DuplicatePoint(3))
        );
        assert_eq!(vandermonde(&f(13), &[0, 3], &[0]), Err(Error::ZeroPoint));
        assert_eq!(
            vandermonde(&f(13), &[1, 3], &[1, 1]),
            Err(Error::DuplicateExponent(1))
        );
    }

    fn square(p: u64, n: usize) -> impl Strategy<Value = FMatrix> {
        proptest::collection::vec(0..p, n * n)
            .prop_map(move |d| FMatrix::from_vec(n, n, d).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_times_matrix_is_identity(m in (1usize..7).prop_flat_map(|n| square(101, n))) {
            let c = f(101);
            match mat_inverse(&c, &m) {
                Ok(inv) => {
                    prop_assert_eq!(mat_rank(&c, &m), m.rows());
                    prop_assert!(inv.mul(&c, &m).unwrap().is_identity());
                    prop_assert!(m.mul(&c, &inv).unwrap().is_identity());
                }
                Err(e) => {
                    prop_assert_eq!(e, Error::SingularMatrix);
                    prop_assert!(mat_rank(&c, &m) < m.rows());
                }
            }
        }

        #[test]
        fn consecutive_vandermonde_invertible(
            pts in proptest::sample::subsequence((1u64..31).collect::<Vec<_>>(), 1..12)
        ) {
            let c = f(31);
            let exps: Vec<u64> = (0..pts.len() as u64).collect();
            let v = vandermonde(&c, &pts, &exps).unwrap();
            prop_assert_eq!(mat_rank(&c, &v), pts.len());
        }

        #[test]
        fn arithmetic_is_closed(a in 0u64..97, b in 0u64..97, e in 0u64..500) {
            let c = f(97);
            for op in [FieldOp::Add, FieldOp::Sub, FieldOp::Mul, FieldOp::Pow] {
                prop_assert!(c.apply(op, &[a, b]).unwrap() < 97);
            }
            prop_assert!(c.pow(a, e) < 97);
            if a != 0 {
                prop_assert_eq!(c.mul(c.inv(a).unwrap(), a), 1);
            }
        }
    }
}
