//! `qpdmm`: construct degree-table codes, check entangled-server
//! feasibility, simulate protocol runs and sweep parameter grids.

mod family;
mod range;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::iproduct;
use qpdmm_core::feasibility::check_plan;
use qpdmm_core::protocol::default_prime;
use qpdmm_core::sweep::{
    cat_row, collect_rows, feasibility_csv, feasibility_rows, gasp_row, rates_csv, row_against_gasp,
};
use qpdmm_core::{
    check_decodable, outer_sum, simulate, to_record, Error, ExponentPlan, MatrixDims, Mode,
    ProtocolConfig,
};

use family::{FamilyArgs, FamilyName};
use range::Span;

#[derive(Debug, Parser)]
#[command(
    name = "qpdmm",
    version,
    about = "Private distributed matrix multiplication codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a code and print its degree table
    Construct(ConstructCmd),
    /// Check whether a code extends to entangled servers
    Feasibility(PlanArgs),
    /// Run the protocol end to end
    Simulate(SimulateCmd),
    /// Emit rate-ratio or feasibility CSV over a parameter grid
    Sweep(SweepCmd),
}

#[derive(Debug, Args)]
struct PlanArgs {
    family: Option<FamilyName>,
    #[command(flatten)]
    params: FamilyArgs,
    /// Load the plan from a record written by `construct --export`
    #[arg(long, value_name = "PATH")]
    plan: Option<PathBuf>,
}

impl PlanArgs {
    fn resolve(&self) -> Result<ExponentPlan, String> {
        family::resolve(self.family, &self.params, self.plan.as_deref())
    }
}

#[derive(Debug, Args)]
struct ConstructCmd {
    #[command(flatten)]
    plan: PlanArgs,
    /// Write the plan record to this file
    #[arg(long, value_name = "PATH")]
    export: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Classical,
    Quantum,
}

#[derive(Debug, Args)]
struct SimulateCmd {
    #[command(flatten)]
    plan: PlanArgs,
    #[arg(long, value_enum, default_value = "classical")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Lower bound for the field prime
    #[arg(long)]
    prime: Option<u64>,
    /// Shape `rows_A,inner,cols_B` of the full matrices; 1x1 blocks by default
    #[arg(long, value_name = "RA,INNER,CB")]
    dims: Option<String>,
    /// Write the full transcript to this file
    #[arg(long, value_name = "PATH")]
    transcript: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SweepTarget {
    Rates(FamilyName),
    Feasibility,
}

fn parse_target(s: &str) -> Result<SweepTarget, String> {
    if s == "feasibility" {
        return Ok(SweepTarget::Feasibility);
    }
    FamilyName::from_str(s, false)
        .map(SweepTarget::Rates)
        .map_err(|_| format!("unknown sweep target {s:?}"))
}

/// Same flags as the family parameters, each taking `a` or `a:b`.
#[derive(Debug, Args)]
struct SweepCmd {
    /// A family name, or `feasibility` for the minimum-T table
    #[arg(value_parser = parse_target)]
    target: SweepTarget,
    #[arg(short = 'K')]
    big_k: Option<Span>,
    /// Defaults to `L = K`
    #[arg(short = 'L')]
    big_l: Option<Span>,
    #[arg(short = 'T')]
    big_t: Option<Span>,
    #[arg(short = 'r')]
    r: Option<Span>,
    #[arg(short = 's')]
    s: Option<Span>,
    #[arg(short = 'x')]
    x: Option<Span>,
    #[arg(short = 'n')]
    n: Option<Span>,
    #[arg(short = 'k')]
    k: Option<Span>,
    #[arg(short = 'm')]
    m: Option<Span>,
    #[arg(short = 'l', long = "ell")]
    l: Option<Span>,
    /// Largest T tried by the feasibility search
    #[arg(long, default_value_t = 64)]
    t_max: usize,
    /// Write CSV here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

enum Failure {
    Verdict,
    Error(String),
}

impl From<String> for Failure {
    fn from(s: String) -> Self {
        Failure::Error(s)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e.to_string())
    }
}

fn verdict(ok: bool) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verdict)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn join(v: impl IntoIterator<Item = u64>) -> String {
    v.into_iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Error(format!("writing {}: {e}", path.display())))
}

fn render_table(plan: &ExponentPlan) -> String {
    let table = outer_sum(plan);
    let info: Vec<(usize, usize)> = plan
        .info_alpha
        .iter()
        .flat_map(|&i| plan.info_beta.iter().map(move |&j| (i, j)))
        .collect();
    let width = table
        .support
        .last()
        .map_or(1, |v| v.to_string().len())
        .max(plan.beta.iter().max().map_or(1, |v| v.to_string().len()))
        + 1;
    let mut out = format!("{:>w$} |", "", w = width + 1);
    for b in &plan.beta {
        out += &format!(" {b:>width$}");
    }
    out.push('\n');
    for (i, a) in plan.alpha.iter().enumerate() {
        out += &format!("{a:>w$} |", w = width + 1);
        for j in 0..plan.beta.len() {
            let cell = plan.sum(i, j).to_string() + if info.contains(&(i, j)) { "*" } else { "" };
            out += &format!(" {cell:>width$}");
        }
        out.push('\n');
    }
    out
}

fn print_feasibility(plan: &ExponentPlan) -> bool {
    let rep = check_plan(plan);
    let run = match (rep.lcc_run.first(), rep.lcc_run.last()) {
        (Some(a), Some(b)) => format!("{a}..{b}"),
        _ => "empty".into(),
    };
    println!(
        "feasible={} (longest interference run {run}, length {}, needs {})",
        yes_no(rep.feasible),
        rep.lcc_run.len(),
        rep.threshold
    );
    rep.feasible
}

fn construct(cmd: ConstructCmd) -> Result<(), Failure> {
    let plan = cmd.plan.resolve()?;
    let table = outer_sum(&plan);
    let record = to_record(&plan);
    println!("plan {record}");
    println!("alpha: {}", join(plan.alpha.iter().copied()));
    println!("beta: {}", join(plan.beta.iter().copied()));
    if let Some(q) = plan.modulus_q {
        println!("sums taken mod q={q}");
    }
    print!("{}", render_table(&plan));
    println!("N={}", table.n_servers);
    println!("UL: {}", join(table.ul.iter().copied()));
    println!("IS: {}", join(table.is_.iter().copied()));
    let dec = check_decodable(&plan);
    match &dec {
        qpdmm_core::Decodability::Pass => println!("decodable=yes"),
        other => println!("decodable=no ({other:?})"),
    }
    print_feasibility(&plan);
    if let Some(path) = cmd.export {
        write_file(&path, &format!("{record}\n"))?;
        println!("wrote {}", path.display());
    }
    verdict(dec.passed())
}

fn feasibility(cmd: PlanArgs) -> Result<(), Failure> {
    let plan = cmd.resolve()?;
    println!("plan {}", to_record(&plan));
    println!("N={}", outer_sum(&plan).n_servers);
    verdict(print_feasibility(&plan))
}

fn parse_dims(s: &str) -> Result<MatrixDims, String> {
    let parts: Vec<usize> = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| format!("bad --dims entry {t:?}"))
        })
        .collect::<Result<_, _>>()?;
    match parts[..] {
        [rows_a, inner, cols_b] if rows_a > 0 && inner > 0 && cols_b > 0 => Ok(MatrixDims {
            rows_a,
            inner,
            cols_b,
        }),
        _ => Err(format!("--dims wants three positive sizes, got {s:?}")),
    }
}

fn run_simulation(cmd: SimulateCmd) -> Result<(), Failure> {
    let plan = cmd.plan.resolve()?;
    let dims = match &cmd.dims {
        Some(s) => parse_dims(s)?,
        None => MatrixDims::from_blocks(plan.k, plan.l, 1, 1, 1),
    };
    let mode = match cmd.mode {
        ModeArg::Classical => Mode::Classical,
        ModeArg::Quantum => Mode::Quantum,
    };
    let p = default_prime(&plan, cmd.prime);
    let cfg = ProtocolConfig::with_default_prime(plan, dims, mode, cmd.seed, cmd.prime)?;
    let out = simulate(&cfg)?;
    let t = &out.transcript;
    println!("plan {}", t.plan_record);
    println!(
        "field p={p}, N={}, mode={}, instances={}",
        t.frame.n(),
        if mode == Mode::Quantum {
            "quantum"
        } else {
            "classical"
        },
        out.rate.instances
    );
    println!("points: {}", join(t.frame.points.iter().copied()));
    println!("decode {}", if out.decode_ok { "OK" } else { "FAILED" });
    println!(
        "privacy audit {} ({} subsets, {})",
        if out.privacy.passed() { "PASS" } else { "FAIL" },
        out.privacy.subsets_checked,
        if out.privacy.exhaustive {
            "exhaustive"
        } else {
            "sampled"
        }
    );
    if let Some(laws) = out.transfer_laws {
        println!("transfer laws {}", if laws { "PASS" } else { "FAIL" });
    }
    println!("R={}/{}", out.rate.rate.numer(), out.rate.rate.denom());
    if let Some(path) = cmd.transcript {
        write_file(&path, &t.export())?;
        println!("wrote {}", path.display());
    }
    verdict(out.passed())
}

fn values(span: Option<Span>) -> Vec<Option<u64>> {
    span.map_or_else(
        || vec![None],
        |s| s.values().into_iter().map(Some).collect(),
    )
}

fn grid(cmd: &SweepCmd) -> Vec<FamilyArgs> {
    let us = |v: Option<u64>| v.map(|v| v as usize);
    let mut out = Vec::new();
    for big_k in values(cmd.big_k) {
        let ls = match cmd.big_l {
            Some(_) => values(cmd.big_l),
            None => vec![big_k],
        };
        let params = iproduct!(
            ls,
            values(cmd.big_t),
            values(cmd.r),
            values(cmd.s),
            values(cmd.x),
            values(cmd.n),
            values(cmd.k),
            values(cmd.m),
            values(cmd.l)
        );
        out.extend(
            params.map(|(big_l, big_t, r, s, x, n, k, m, l)| FamilyArgs {
                big_k: us(big_k),
                big_l: us(big_l),
                big_t: us(big_t),
                r,
                s,
                x,
                n,
                k,
                m,
                l,
            }),
        );
    }
    out
}

fn sweep(cmd: SweepCmd) -> Result<(), Failure> {
    let csv = match cmd.target {
        SweepTarget::Feasibility => {
            let ks: Vec<usize> = cmd
                .big_k
                .ok_or_else(|| "feasibility sweep needs -K".to_string())?
                .values()
                .into_iter()
                .map(|v| v as usize)
                .collect();
            let ls: Option<Vec<usize>> = cmd
                .big_l
                .map(|s| s.values().into_iter().map(|v| v as usize).collect());
            feasibility_csv(&feasibility_rows(&ks, ls.as_deref(), cmd.t_max))
        }
        SweepTarget::Rates(fam) => {
            let rows = collect_rows(grid(&cmd), |a| {
                let bad = Error::ParamOutOfRange;
                match fam {
                    FamilyName::Gasp if a.r.is_none() => gasp_row(
                        a.big_k.ok_or_else(|| bad("-K".into()))?,
                        a.big_l.ok_or_else(|| bad("-L".into()))?,
                        a.big_t.ok_or_else(|| bad("-T".into()))?,
                    ),
                    FamilyName::Cat if a.x.is_none() => cat_row(
                        a.big_k.ok_or_else(|| bad("-K".into()))?,
                        a.big_l.ok_or_else(|| bad("-L".into()))?,
                        a.big_t.ok_or_else(|| bad("-T".into()))?,
                    ),
                    _ => row_against_gasp(&family::build(fam, &a).map_err(bad)?),
                }
            });
            if rows.is_empty() {
                return Err(Failure::Error("no grid point produced a code".into()));
            }
            rates_csv(&rows)
        }
    };
    match cmd.out {
        Some(path) => write_file(&path, &csv),
        None => {
            print!("{csv}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Construct(c) => construct(c),
        Command::Feasibility(c) => feasibility(c),
        Command::Simulate(c) => run_simulation(c),
        Command::Sweep(c) => sweep(c),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verdict) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
