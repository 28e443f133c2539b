use super::{check_positive, gap_progression, outer_sum, ExponentPlan, Family};
use crate::error::{Error, Result};

fn range_err(what: String) -> Error {
    Error::ParamOutOfRange(what)
}

fn classical_plan(
    k: usize,
    l: usize,
    t: usize,
    family: Family,
    alpha: Vec<u64>,
    beta: Vec<u64>,
) -> ExponentPlan {
    ExponentPlan {
        k,
        l,
        t,
        family,
        alpha,
        beta,
        info_alpha: (0..k).collect(),
        info_beta: (0..l).collect(),
        modulus_q: None,
    }
}

fn check_gasp_r(k: usize, l: usize, t: usize, r: u64) -> Result<()> {
    check_positive(k, l)?;
    if t == 0 || r == 0 || r as usize > k.min(t) {
        return Err(range_err(format!(
            "GASP_r needs 1 <= r <= min(K,T), got r={r}, K={k}, T={t}"
        )));
    }
    Ok(())
}

pub fn build_gasp_r(k: usize, l: usize, t: usize, r: u64) -> Result<ExponentPlan> {
    check_gasp_r(k, l, t, r)?;
    let (ku, kl) = (k as u64, (k * l) as u64);
    let mut alpha: Vec<u64> = (0..ku).collect();
    alpha.extend(gap_progression(t, ku, r).into_iter().map(|g| kl + g));
    let mut beta: Vec<u64> = (0..l as u64).map(|i| ku * i).collect();
    beta.extend((0..t as u64).map(|i| kl + i));
    Ok(classical_plan(k, l, t, Family::GaspR { r }, alpha, beta))
}

/// Closed-form server count of GASP_r. Evaluated with everything scaled by
/// `2K` so the fractional terms stay integral.
pub fn gasp_server_formula(k: usize, l: usize, t: usize, r: u64) -> Result<usize> {
    check_gasp_r(k, l, t, r)?;
    let (k, l, t, r) = (k as i128, l as i128, t as i128, r as i128);
    let phi = t - 1 - k * l + 2 * k;
    let mu = (t - 1) % k;
    let x = ((t - mu - 1) / k - i128::from(mu == 0)).min(l - 3);
    let b = -k - 2 * phi.max(0) + 2 * t - 2;
    let base = k * l + 2 * k + 3 * t - 2 - k.max(phi)
        + (l - 2) * r.min(r - phi).max(0)
        + ((t - 1) / r) * (t - 1).min(k - r);
    let mut scaled = 2 * k * base;
    if phi < r {
        scaled -=
            2 * k * (mu - r).min(0) + 2 * r * (t - mu - 1) + k * (-k * x * x + b * x + t - mu - 1)
                - (t - mu - 1) * (t + mu - 1);
    }
    debug_assert_eq!(scaled % (2 * k), 0);
    Ok((scaled / (2 * k)) as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalGasp {
    pub r: u64,
    pub n: usize,
    pub plan: ExponentPlan,
}

/// GASP_r with the chain length minimizing the server count (smallest r on ties).
pub fn optimal_gasp(k: usize, l: usize, t: usize) -> Result<OptimalGasp> {
    check_gasp_r(k, l, t, 1)?;
    let mut best: Option<OptimalGasp> = None;
    for r in 1..=k.min(t) as u64 {
        let plan = build_gasp_r(k, l, t, r)?;
        let n = outer_sum(&plan).n_servers;
        if best.as_ref().is_none_or(|b| n < b.n) {
            best = Some(OptimalGasp { r, n, plan });
        }
    }
    Ok(best.expect("r = 1 is always admissible"))
}

pub fn build_gasp_rs(k: usize, l: usize, t: usize, r: u64, s: u64) -> Result<ExponentPlan> {
    check_positive(k, l)?;
    let cap = k.min(t) as u64;
    if t < 2 || r == 0 || s == 0 || r > cap || s > cap {
        return Err(range_err(format!(
            "GASP_rs needs T >= 2 and 1 <= r,s <= {cap}"
        )));
    }
    let (ku, kl) = (k as u64, (k * l) as u64);
    let mut alpha: Vec<u64> = (0..ku).collect();
    alpha.extend(gap_progression(t, ku, r).into_iter().map(|g| kl + g));
    let mut beta: Vec<u64> = (0..l as u64).map(|i| ku * i).collect();
    beta.extend(gap_progression(t, ku, s).into_iter().map(|g| kl + g));
    Ok(classical_plan(
        k,
        l,
        t,
        Family::GaspRS { r, s },
        alpha,
        beta,
    ))
}

pub fn build_dog(k: usize, l: usize, t: usize, r: u64, s: u64) -> Result<ExponentPlan> {
    check_positive(k, l)?;
    let ku = k as u64;
    if t < 2 || r == 0 || r > t as u64 || s == 0 || s > (ku + r).min(t as u64) {
        return Err(range_err(format!(
            "DOG needs T >= 2, 1 <= r <= T, 1 <= s <= min(K+r,T); got r={r}, s={s}"
        )));
    }
    let step = ku + r;
    let mut alpha: Vec<u64> = (0..ku).collect();
    alpha.extend(gap_progression(t, step, r).into_iter().map(|g| ku + g));
    let mut beta: Vec<u64> = (0..l as u64).map(|i| step * i).collect();
    let offset = step * (l as u64 - 1) + ku;
    beta.extend(gap_progression(t, step, s).into_iter().map(|g| offset + g));
    Ok(classical_plan(k, l, t, Family::DogRS { r, s }, alpha, beta))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Inverse of `a` modulo `m` for coprime `a, m`.
fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(m as i128) as u64)
}

pub fn build_cat(k: usize, l: usize, t: usize, x_choice: Option<u64>) -> Result<ExponentPlan> {
    if !(k >= l && l >= t && t >= 2) {
        return Err(range_err(format!(
            "CAT needs K >= L >= T >= 2, got ({k},{l},{t})"
        )));
    }
    let (ku, lu, tbar) = (k as u64, l as u64, t as u64 - 1);
    let k_star = (ku + 1..)
        .find(|&c| gcd(c, tbar) == 1)
        .expect("coprime exists");
    let l_star = (lu + 1..)
        .find(|&c| gcd(c, tbar) == 1)
        .expect("coprime exists");
    let q = k_star * l_star + tbar * tbar;
    let x = match x_choice {
        Some(x) if x == 0 || gcd(x, q) != 1 => {
            return Err(range_err(format!("x={x} is not coprime with q={q}")));
        }
        Some(x) => x % q,
        None => (1..).find(|&c| gcd(c, q) == 1).expect("1 is coprime"),
    };
    // y * K* = -x * Tbar (mod q)
    let rhs = (q - (x * tbar) % q) % q;
    let g = gcd(k_star, q);
    if rhs % g != 0 {
        return Err(Error::NoSolution { q });
    }
    let inv = inverse_mod(k_star / g, q / g).ok_or(Error::NoSolution { q })?;
    let y = (rhs / g) * inv % (q / g);

    let mut alpha: Vec<u64> = (0..ku).map(|i| y * i % q).collect();
    alpha.extend((0..t as u64).map(|i| (x * i + ku * y) % q));
    let mut beta: Vec<u64> = (0..lu).map(|i| x * i % q).collect();
    beta.extend((0..t as u64).map(|i| (y * i + q - x) % q));
    let mut plan = classical_plan(
        k,
        l,
        t,
        Family::CatX {
            x,
            y,
            k_star,
            l_star,
        },
        alpha,
        beta,
    );
    plan.modulus_q = Some(q);
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_tables::check_decodable;
    use std::collections::BTreeSet;

    #[test]
    fn gasp_examples() {
        let p = build_gasp_r(2, 2, 1, 1).unwrap();
        assert_eq!(
            (p.alpha.clone(), p.beta.clone()),
            (vec![0, 1, 4], vec![0, 2, 4])
        );
        let tab = outer_sum(&p);
        assert_eq!(tab.n_servers, 8);
        assert_eq!(tab.support, vec![0, 1, 2, 3, 4, 5, 6, 8]);
        assert_eq!(tab.ul, BTreeSet::from([0, 1, 2, 3]));

        let p = build_gasp_r(2, 2, 3, 2).unwrap();
        assert_eq!(
            (p.alpha.clone(), p.beta.clone()),
            (vec![0, 1, 4, 5, 6], vec![0, 2, 4, 5, 6])
        );
        assert_eq!(outer_sum(&p).support, (0..13).collect::<Vec<_>>());
        assert!(check_decodable(&p).passed());
        assert_eq!(gasp_server_formula(2, 2, 3, 2).unwrap(), 13);

        assert_eq!(optimal_gasp(4, 4, 4).unwrap().n, 36);
        assert!(build_gasp_r(2, 2, 3, 3).is_err());
        assert!(build_gasp_r(2, 2, 0, 1).is_err());
    }

    #[test]
    fn optimal_gasp_counts() {
        // n^4 + 2n^3 + 2n^2 - n - 2 at n = 2, 3
        assert_eq!(optimal_gasp(4, 4, 4).unwrap().n, 36);
        assert_eq!(optimal_gasp(9, 9, 9).unwrap().n, 148);
        let o = optimal_gasp(2, 2, 2).unwrap();
        assert_eq!((o.r, o.n), (1, 11));
    }

    #[test]
    fn gasp_rs_and_dog_examples() {
        let p = build_gasp_rs(2, 2, 2, 1, 1).unwrap();
        assert_eq!((p.alpha, p.beta), (vec![0, 1, 4, 6], vec![0, 2, 4, 6]));
        let p = build_gasp_rs(2, 2, 2, 2, 2).unwrap();
        assert_eq!((p.alpha, p.beta), (vec![0, 1, 4, 5], vec![0, 2, 4, 5]));
        let p = build_gasp_rs(3, 2, 3, 3, 3).unwrap();
        assert_eq!(p.beta[2..], build_gasp_r(3, 2, 3, 3).unwrap().beta[2..]);

        let p = build_dog(2, 2, 2, 1, 1).unwrap();
        assert_eq!((p.alpha, p.beta), (vec![0, 1, 2, 5], vec![0, 3, 5, 8]));
        let p = build_dog(3, 2, 2, 2, 2).unwrap();
        assert_eq!(p.alpha[3..], [3, 4]);
        let p = build_dog(3, 3, 4, 2, 1).unwrap();
        let b2 = &p.beta[3..];
        assert!(b2.windows(2).all(|w| w[1] - w[0] == 5));
        assert!(build_dog(2, 2, 1, 1, 1).is_err());
    }

    #[test]
    fn cat_examples() {
        let p = build_cat(2, 2, 2, None).unwrap();
        assert_eq!(p.modulus_q, Some(10));
        assert_eq!(
            p.family,
            Family::CatX {
                x: 1,
                y: 3,
                k_star: 3,
                l_star: 3
            }
        );
        assert_eq!(
            (p.alpha.clone(), p.beta.clone()),
            (vec![0, 3, 6, 7], vec![0, 1, 9, 2])
        );
        let tab = outer_sum(&p);
        assert_eq!(tab.ul, BTreeSet::from([0, 1, 3, 4]));
        assert_eq!(tab.support, (0..10).collect::<Vec<_>>());
        assert!(check_decodable(&p).passed());

        let p = build_cat(3, 2, 2, None).unwrap();
        assert_eq!(
            p.family,
            Family::CatX {
                x: 1,
                y: 3,
                k_star: 4,
                l_star: 3
            }
        );
        assert_eq!(p.modulus_q, Some(13));
        assert!(build_cat(2, 2, 1, None).is_err());
        assert!(build_cat(2, 2, 2, Some(5)).is_err());
    }

    #[test]
    fn cat_server_count_at_most_q() {
        let p = build_cat(3, 3, 3, None).unwrap();
        assert_eq!((outer_sum(&p).n_servers, p.modulus_q), (22, Some(29)));
        for k in 2..=7 {
            for l in 2..=k {
                for t in 2..=l {
                    for x in [None, Some(3)] {
                        let Ok(p) = build_cat(k, l, t, x) else {
                            continue;
                        };
                        assert!(
                            outer_sum(&p).n_servers as u64 <= p.modulus_q.unwrap(),
                            "{k} {l} {t}"
                        );
                        assert!(check_decodable(&p).passed(), "{k} {l} {t}");
                    }
                }
            }
        }
    }

    #[test]
    fn formula_matches_enumeration_small_grid() {
        for k in 1..=6 {
            for l in 1..=6 {
                for t in 1..=6 {
                    for r in 1..=k.min(t) as u64 {
                        let n = outer_sum(&build_gasp_r(k, l, t, r).unwrap()).n_servers;
                        assert_eq!(
                            gasp_server_formula(k, l, t, r).unwrap(),
                            n,
                            "({k},{l},{t},{r})"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn inverse_mod_small() {
        assert_eq!(inverse_mod(3, 10), Some(7));
        assert_eq!(inverse_mod(2, 4), None);
    }
}
