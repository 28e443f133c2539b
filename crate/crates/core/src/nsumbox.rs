//! The N-sum box as a linear map `y = M x`, with `M = [0 I] [G H]^-1`.

use crate::error::{Error, Result};
use crate::gf::{mat_inverse, FMatrix, FieldContext};
use crate::grs::sso_check;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransferMatrix {
    pub m: FMatrix,
    pub g: FMatrix,
    pub h: FMatrix,
}

pub fn build_transfer(ctx: &FieldContext, g: &FMatrix, h: &FMatrix) -> Result<TransferMatrix> {
    let n = g.cols();
    if g.shape() != (2 * n, n) || h.shape() != (2 * n, n) {
        return Err(Error::DimensionMismatch(format!(
            "G is {:?} and H is {:?}, both must be 2N x N",
            g.shape(),
            h.shape()
        )));
    }
    if !sso_check(ctx, g)? {
        return Err(Error::NotSso);
    }
    let inv = mat_inverse(ctx, &g.hstack(h)?).map_err(|_| Error::SingularStack)?;
    let m = inv.block(n, 0, n, 2 * n);
    Ok(TransferMatrix {
        m,
        g: g.clone(),
        h: h.clone(),
    })
}

impl TransferMatrix {
    pub fn n(&self) -> usize {
        self.m.rows()
    }

    /// `m g = 0` and `m h = I`.
    pub fn laws_hold(&self, ctx: &FieldContext) -> bool {
        let mg = self.m.mul(ctx, &self.g).expect("shapes fixed at build");
        let mh = self.m.mul(ctx, &self.h).expect("shapes fixed at build");
        mg.is_zero() && mh.is_identity()
    }
}

pub fn apply_box(ctx: &FieldContext, tm: &TransferMatrix, x: &[u64]) -> Result<Vec<u64>> {
    if x.len() != tm.m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "input of length {} for a {}-sum box",
            x.len(),
            tm.n()
        )));
    }
    Ok(tm.m.mul(ctx, &FMatrix::column_vector(x))?.column(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::mat_rank;
    use crate::grs::{grs_generator, shifted_dual_multipliers};
    use proptest::prelude::*;

    fn f(p: u64) -> FieldContext {
        FieldContext::new(p).unwrap()
    }

    #[test]
    fn one_dimensional_boxes() {
        let c = f(7);
        let e0 = FMatrix::column_vector(&[1, 0]);
        let e1 = FMatrix::column_vector(&[0, 1]);
        let tm = build_transfer(&c, &e0, &e1).unwrap();
        assert_eq!(tm.m.row(0), [0, 1]);
        let tm = build_transfer(&c, &e1, &e0).unwrap();
        assert_eq!(tm.m.row(0), [1, 0]);
        assert!(tm.laws_hold(&c));
        assert_eq!(build_transfer(&c, &e0, &e0), Err(Error::SingularStack));
        assert!(apply_box(&c, &tm, &[1, 2, 3]).is_err());
    }

    #[test]
    fn rejects_non_sso() {
        let c = f(7);
        let g = FMatrix::from_rows(&[vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 0]]).unwrap();
        let h = FMatrix::from_rows(&[vec![0, 0], vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(build_transfer(&c, &g, &h), Err(Error::NotSso));
    }

    /// A 2N x N SSO block from a GRS code and its dual, plus the complement
    /// columns as H.
    fn grs_box(c: &FieldContext, n: usize) -> TransferMatrix {
        let pts: Vec<u64> = (1..=n as u64).collect();
        let u = vec![1; n];
        let v = shifted_dual_multipliers(c, &pts, &u, 0, 0).unwrap();
        let (k1, k2) = (n / 2, n - n / 2);
        let q1 = grs_generator(c, &pts, &u, 0, n);
        let q2 = grs_generator(c, &pts, &v, 0, n);
        let g = q1
            .select_columns(&(0..k1).collect::<Vec<_>>())
            .block_diag(&q2.select_columns(&(0..k2).collect::<Vec<_>>()));
        let h = q1
            .select_columns(&(k1..n).collect::<Vec<_>>())
            .block_diag(&q2.select_columns(&(k2..n).collect::<Vec<_>>()));
        build_transfer(c, &g, &h).unwrap()
    }

    #[test]
    fn grs_box_laws() {
        let c = f(131);
        for n in 1..=13 {
            let tm = grs_box(&c, n);
            assert!(tm.laws_hold(&c), "n={n}");
            assert_eq!(mat_rank(&c, &tm.m), n);
        }
    }

    proptest! {
        #[test]
        fn box_reads_h_coordinates(n in 1usize..9, w in prop::collection::vec(0u64..101, 9), z in prop::collection::vec(0u64..101, 9)) {
            let c = f(101);
            let tm = grs_box(&c, n);
            let gw = tm.g.mul(&c, &FMatrix::column_vector(&w[..n])).unwrap();
            let hz = tm.h.mul(&c, &FMatrix::column_vector(&z[..n])).unwrap();
            prop_assert!(apply_box(&c, &tm, &gw.column(0)).unwrap().iter().all(|&y| y == 0));
            prop_assert_eq!(apply_box(&c, &tm, &hz.column(0)).unwrap(), z[..n].to_vec());
            let x = gw.add(&c, &hz).unwrap().column(0);
            prop_assert_eq!(apply_box(&c, &tm, &x).unwrap(), z[..n].to_vec());
        }

        #[test]
        fn box_is_linear(n in 1usize..8, a in 0u64..101, b in 0u64..101,
                         x1 in prop::collection::vec(0u64..101, 16), x2 in prop::collection::vec(0u64..101, 16)) {
            let c = f(101);
            let tm = grs_box(&c, n);
            let (x1, x2) = (&x1[..2 * n], &x2[..2 * n]);
            let mix: Vec<u64> = x1.iter().zip(x2).map(|(&p, &q)| c.add(c.mul(a, p), c.mul(b, q))).collect();
            let y1 = apply_box(&c, &tm, x1).unwrap();
            let y2 = apply_box(&c, &tm, x2).unwrap();
            let want: Vec<u64> = y1.iter().zip(&y2).map(|(&p, &q)| c.add(c.mul(a, p), c.mul(b, q))).collect();
            prop_assert_eq!(apply_box(&c, &tm, &mix).unwrap(), want);
        }
    }
}
