//! One-line text form of a plan:
//! `family key=value... K L T | alpha | beta | info_alpha | info_beta | q`
//! with `-` standing for "no cyclic modulus".

use std::collections::HashMap;

use super::{ExponentPlan, Family};
use crate::error::{Error, Result};

fn join<T: ToString>(v: &[T]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn to_record(plan: &ExponentPlan) -> String {
    let mut head = vec![plan.family.tag().to_string()];
    head.extend(
        plan.family
            .params()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}")),
    );
    head.extend([plan.k, plan.l, plan.t].map(|v| v.to_string()));
    let q = plan
        .modulus_q
        .map_or_else(|| "-".to_string(), |q| q.to_string());
    [
        head.join(" "),
        join(&plan.alpha),
        join(&plan.beta),
        join(&plan.info_alpha),
        join(&plan.info_beta),
        q,
    ]
    .join(" | ")
}

fn numbers<T: std::str::FromStr>(field: &str, what: &str) -> Result<Vec<T>> {
    field
        .split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::Parse(format!("bad {what} entry {tok:?}")))
        })
        .collect()
}

pub fn parse_record(line: &str) -> Result<ExponentPlan> {
    let fields: Vec<&str> = line.trim().split('|').map(str::trim).collect();
    let [head, alpha, beta, ia, ib, q] = fields[..] else {
        return Err(Error::Parse(format!(
            "expected 6 fields, found {}",
            fields.len()
        )));
    };
    let mut toks = head.split_whitespace();
    let tag = toks
        .next()
        .ok_or_else(|| Error::Parse("missing family".into()))?;
    let mut params = HashMap::new();
    let mut dims = Vec::new();
    for tok in toks {
        match tok.split_once('=') {
            Some((k, v)) => {
                let v = v
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad parameter {tok:?}")))?;
                params.insert(k.to_string(), v);
            }
            None => dims.push(
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad count {tok:?}")))?,
            ),
        }
    }
    let [k, l, t] = dims[..] else {
        return Err(Error::Parse(format!(
            "expected K L T, found {} counts",
            dims.len()
        )));
    };
    let modulus_q = match q {
        "-" => None,
        s => Some(
            s.parse()
                .map_err(|_| Error::Parse(format!("bad modulus {s:?}")))?,
        ),
    };
    let plan = ExponentPlan {
        k,
        l,
        t,
        family: Family::from_parts(tag, &params)?,
        alpha: numbers(alpha, "alpha")?,
        beta: numbers(beta, "beta")?,
        info_alpha: numbers(ia, "info_alpha")?,
        info_beta: numbers(ib, "info_beta")?,
        modulus_q,
    };
    plan.validate()?;
    Ok(plan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree_tables::{
        build_cat, build_dog, build_gasp_r, build_gasp_rs, build_low_privacy, build_quantum_family,
        QuantumSpec,
    };
    use proptest::prelude::*;

    #[test]
    fn gasp_record_text() {
        let p = build_gasp_r(2, 2, 3, 2).unwrap();
        assert_eq!(
            to_record(&p),
            "gasp-r r=2 2 2 3 | 0 1 4 5 6 | 0 2 4 5 6 | 0 1 | 0 1 | -"
        );
        let c = build_cat(2, 2, 2, None).unwrap();
        assert_eq!(
            to_record(&c),
            "cat x=1 y=3 kstar=3 lstar=3 2 2 2 | 0 3 6 7 | 0 1 9 2 | 0 1 | 0 1 | 10"
        );
    }

    #[test]
    fn malformed_records() {
        assert!(parse_record("gasp-r r=2 2 2 3 | 0 1").is_err());
        assert!(parse_record("nope 1 1 1 | 0 | 0 | 0 | 0 | -").is_err());
        assert!(parse_record("gasp-r 1 1 1 | 0 | 0 | 0 | 0 | -").is_err());
        assert!(parse_record("qf-klt 1 1 | 0 | 0 | 0 | 0 | -").is_err());
        assert!(parse_record("qf-klt 1 1 1 | 0 | 0 | 3 | 0 | -").is_err());
    }

    fn any_plan() -> impl Strategy<Value = ExponentPlan> {
        prop_oneof![
            (1usize..6, 1usize..6, 1usize..6, 1u64..6)
                .prop_filter_map("r", |(k, l, t, r)| build_gasp_r(k, l, t, r).ok()),
            (2usize..6, 1usize..6, 2usize..6, 1u64..6, 1u64..6)
                .prop_filter_map("rs", |(k, l, t, r, s)| build_gasp_rs(k, l, t, r, s).ok()),
            (2usize..6, 1usize..6, 2usize..6, 1u64..6, 1u64..6)
                .prop_filter_map("dog", |(k, l, t, r, s)| build_dog(k, l, t, r, s).ok()),
            (2usize..7, 2usize..7, 2usize..7, prop::option::of(1u64..9))
                .prop_filter_map("cat", |(k, l, t, x)| build_cat(k, l, t, x).ok()),
            (1u64..8, 1u64..8).prop_filter_map("klt", |(k, t)| build_quantum_family(
                QuantumSpec::Klt { k, t }
            )
            .ok()),
            (2usize..12, 2usize..8, 1usize..7)
                .prop_filter_map("lp", |(k, l, t)| build_low_privacy(k, l, t).ok()),
        ]
    }

    proptest! {
        #[test]
        fn record_round_trip(p in any_plan()) {
            prop_assert_eq!(parse_record(&to_record(&p)).unwrap(), p);
        }
    }
}
