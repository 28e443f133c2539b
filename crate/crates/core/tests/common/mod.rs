//! Test-side oracles. Plain `u128` arithmetic and `Vec<Vec<_>>` matrices, no
//! shared code with the library's field or matrix types.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let (mut acc, m) = (1u128, p as u128);
    let mut base = a as u128 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    a = acc as u64;
    a
}

pub fn matmul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|j| {
                    let s: u128 = (0..inner).map(|k| row[k] as u128 * b[k][j] as u128).sum();
                    (s % p as u128) as u64
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j]).collect())
        .collect()
}

pub fn is_zero(a: &[Vec<u64>]) -> bool {
    a.iter().flatten().all(|&v| v == 0)
}

pub fn is_identity(a: &[Vec<u64>]) -> bool {
    a.iter()
        .enumerate()
        .all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == u64::from(i == j)))
}

/// Distinct values of `alpha[i] + beta[j]`, reduced mod `q` when given.
pub fn distinct_sums(alpha: &[u64], beta: &[u64], q: Option<u64>) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for &a in alpha {
        for &b in beta {
            out.insert(q.map_or(a + b, |q| (a + b) % q));
        }
    }
    out
}

/// GASP_r exponents written out from the layout definition.
pub fn gasp_exponents(k: u64, l: u64, t: u64, r: u64) -> (Vec<u64>, Vec<u64>) {
    let mut alpha: Vec<u64> = (0..k).collect();
    let mut i = 0;
    let mut block = 0;
    while (alpha.len() as u64) < k + t {
        for j in 0..r {
            if i == t {
                break;
            }
            alpha.push(k * l + block * k + j);
            i += 1;
        }
        block += 1;
    }
    let mut beta: Vec<u64> = (0..l).map(|j| k * j).collect();
    beta.extend((0..t).map(|j| k * l + j));
    (alpha, beta)
}

/// `n x k` matrix with entry `(i, j) = mult_i * a_i^(shift + j)`.
pub fn generator(points: &[u64], mult: &[u64], shift: u64, k: usize, p: u64) -> Vec<Vec<u64>> {
    points
        .iter()
        .zip(mult)
        .map(|(&a, &m)| {
            (0..k as u64)
                .map(|j| (m as u128 * powmod(a, shift + j, p) as u128 % p as u128) as u64)
                .collect()
        })
        .collect()
}
