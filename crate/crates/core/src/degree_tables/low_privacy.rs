//! Codes for `K >= L > T`: one polynomial carries more noise terms than the
//! privacy level requires so that its interference block forms a long run.

use super::{ExponentPlan, Family};
use crate::error::{Error, Result};

fn plan(
    (k, l, t): (usize, usize, usize),
    family: Family,
    alpha: Vec<u64>,
    info_alpha: Vec<usize>,
    beta: Vec<u64>,
    info_beta: Vec<usize>,
) -> ExponentPlan {
    ExponentPlan {
        k,
        l,
        t,
        family,
        alpha,
        beta,
        info_alpha,
        info_beta,
        modulus_q: None,
    }
}

fn hand_case(k: usize, l: usize, t: usize) -> Option<ExponentPlan> {
    match (k, l, t) {
        (2, 2, 1) => Some(plan(
            (2, 2, 1),
            Family::LpEqual { t_bar: 2 },
            vec![0, 2, 4],
            vec![1, 2],
            vec![0, 1, 4, 5],
            vec![2, 3],
        )),
        (3, 3, 1) => Some(plan(
            (3, 3, 1),
            Family::LpEqual { t_bar: 3 },
            vec![0, 3, 5, 7],
            vec![1, 2, 3],
            vec![0, 1, 2, 10, 18, 26],
            vec![3, 4, 5],
        )),
        _ => None,
    }
}

pub fn build_low_privacy(k: usize, l: usize, t: usize) -> Result<ExponentPlan> {
    if !(k >= l && l > t && t >= 1) {
        return Err(Error::ParamOutOfRange(format!(
            "low-privacy codes need K >= L > T >= 1, got ({k},{l},{t})"
        )));
    }
    if let Some(p) = hand_case(k, l, t) {
        return Ok(p);
    }
    let (ku, lu, tu) = (k as u64, l as u64, t as u64);
    let beta_noise = 0..tu;
    if k == l {
        let mut alpha: Vec<u64> = (0..lu).collect();
        alpha.extend((0..lu - 1).map(|i| lu * lu + tu - 1 + i));
        alpha.push(2 * lu * lu + 2 * tu - 3);
        let mut beta: Vec<u64> = beta_noise.collect();
        beta.extend((0..lu).map(|i| tu + lu - 2 + i * (lu - 1)));
        return Ok(plan(
            (k, l, t),
            Family::LpEqual { t_bar: lu },
            alpha,
            (l..2 * l).collect(),
            beta,
            (t..t + l).collect(),
        ));
    }

    let (m, delta) = (ku / (lu - 1), ku % (lu - 1));
    let (mi, di, li, ti) = (m as i64, delta as i64, lu as i64, tu as i64);
    if 2 * mi * li < di * li + (mi - 2) * (ti - 1) + (mi - 1) * li * li + 6 {
        return Err(Error::SideConditionViolated(format!(
            "2mL >= dL + (m-2)(T-1) + (m-1)L^2 + 6 fails for K={k}, L={l}, T={t} (m={m}, d={delta})"
        )));
    }
    let mut alpha: Vec<u64> = (0..ku).collect();
    for j in 1..=mi + 1 {
        let start = (j + 1) * (k as i64) + j * ti + j * li * li - (j + 1) * li - 2 * j + 1;
        let len = if j <= mi { lu - 1 } else { delta };
        alpha.extend((0..len).map(|i| start as u64 + i));
    }
    let mut beta: Vec<u64> = beta_noise.collect();
    beta.extend((0..lu).map(|i| ku + tu - 2 + i * (lu - 1)));
    Ok(plan(
        (k, l, t),
        Family::LpGeneral {
            m,
            delta,
            t_bar: ku,
        },
        alpha,
        (k..2 * k).collect(),
        beta,
        (t..t + l).collect(),
    ))
}
