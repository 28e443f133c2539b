use clap::{Args, ValueEnum};
use qpdmm_core::{
    build_cat, build_dog, build_gasp_r, build_gasp_rs, build_low_privacy, build_quantum_family,
    optimal_gasp, parse_record, ExponentPlan, QuantumSpec,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyName {
    /// GASP_r; optimal chain length when `-r` is omitted
    Gasp,
    GaspRs,
    Dog,
    Cat,
    QfSquare,
    QfPower,
    QfAdditive,
    QfKlt,
    QfKt,
    QfKtShift,
    /// Codes for `K >= L > T`
    LowPrivacy,
}

/// Parameters shared by every family. Which ones are required depends on
/// the family.
#[derive(Debug, Clone, Default, Args)]
pub struct FamilyArgs {
    #[arg(short = 'K')]
    pub big_k: Option<usize>,
    #[arg(short = 'L')]
    pub big_l: Option<usize>,
    #[arg(short = 'T')]
    pub big_t: Option<usize>,
    #[arg(short = 'r')]
    pub r: Option<u64>,
    #[arg(short = 's')]
    pub s: Option<u64>,
    /// Step of the cyclic code; must be coprime with q
    #[arg(short = 'x')]
    pub x: Option<u64>,
    #[arg(short = 'n')]
    pub n: Option<u64>,
    #[arg(short = 'k')]
    pub k: Option<u64>,
    #[arg(short = 'm')]
    pub m: Option<u64>,
    #[arg(short = 'l', long = "ell")]
    pub l: Option<u64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: FamilyName) -> Result<T, String> {
    v.ok_or_else(|| format!("{family:?} needs {flag}"))
}

pub fn build(family: FamilyName, a: &FamilyArgs) -> Result<ExponentPlan, String> {
    let big = |v: Option<usize>, flag: &str| need(v, flag, family);
    let small = |v: Option<u64>, flag: &str| need(v, flag, family);
    let plan = match family {
        FamilyName::Gasp => {
            let (k, l, t) = (
                big(a.big_k, "-K")?,
                big(a.big_l, "-L")?,
                big(a.big_t, "-T")?,
            );
            match a.r {
                Some(r) => build_gasp_r(k, l, t, r),
                None => optimal_gasp(k, l, t).map(|o| o.plan),
            }
        }
        FamilyName::GaspRs => build_gasp_rs(
            big(a.big_k, "-K")?,
            big(a.big_l, "-L")?,
            big(a.big_t, "-T")?,
            small(a.r, "-r")?,
            small(a.s, "-s")?,
        ),
        FamilyName::Dog => build_dog(
            big(a.big_k, "-K")?,
            big(a.big_l, "-L")?,
            big(a.big_t, "-T")?,
            small(a.r, "-r")?,
            small(a.s, "-s")?,
        ),
        FamilyName::Cat => build_cat(
            big(a.big_k, "-K")?,
            big(a.big_l, "-L")?,
            big(a.big_t, "-T")?,
            a.x,
        ),
        FamilyName::LowPrivacy => build_low_privacy(
            big(a.big_k, "-K")?,
            big(a.big_l, "-L")?,
            big(a.big_t, "-T")?,
        ),
        _ => build_quantum_family(quantum_spec(family, a)?),
    };
    plan.map_err(|e| e.to_string())
}

pub fn quantum_spec(family: FamilyName, a: &FamilyArgs) -> Result<QuantumSpec, String> {
    let v = |x: Option<u64>, flag: &str| need(x, flag, family);
    let kt = |x: Option<usize>, flag: &str| need(x, flag, family).map(|v| v as u64);
    Ok(match family {
        FamilyName::QfSquare => QuantumSpec::Square { n: v(a.n, "-n")? },
        FamilyName::QfPower => QuantumSpec::Power {
            n: v(a.n, "-n")?,
            k: v(a.k, "-k")?,
            m: v(a.m, "-m")?,
        },
        FamilyName::QfAdditive => QuantumSpec::Additive {
            n: v(a.n, "-n")?,
            k: v(a.k, "-k")?,
            r: v(a.r, "-r")?,
        },
        FamilyName::QfKlt => QuantumSpec::Klt {
            k: kt(a.big_k, "-K")?,
            t: kt(a.big_t, "-T")?,
        },
        FamilyName::QfKt => QuantumSpec::Kt {
            n: v(a.n, "-n")?,
            k: v(a.k, "-k")?,
            l: v(a.l, "-l")?,
        },
        FamilyName::QfKtShift => QuantumSpec::KtShift {
            n: v(a.n, "-n")?,
            l: v(a.l, "-l")?,
            r: v(a.r, "-r")?,
        },
        other => return Err(format!("{other:?} is not a quantum-native family")),
    })
}

/// A plan from a family and flags, or from a saved record.
pub fn resolve(
    family: Option<FamilyName>,
    args: &FamilyArgs,
    plan: Option<&std::path::Path>,
) -> Result<ExponentPlan, String> {
    match (family, plan) {
        (Some(f), None) => build(f, args),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("reading {}: {e}", path.display()))?;
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .ok_or_else(|| format!("{} is empty", path.display()))?;
            parse_record(line).map_err(|e| e.to_string())
        }
        (Some(_), Some(_)) => Err("give either a family or --plan, not both".into()),
        (None, None) => Err("a family or --plan is required".into()),
    }
}
