use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lzcycles::exec::Exec;
use lzcycles::levelset::{IntervalKind, LevelsetContext, LevelsetError};
use lzcycles::optcycles::{Problem, SolveError};
use lzcycles::oracle::{brute_optimal_sequence, reconstruct_witness, OracleError};
use lzcycles::zigzag::LevelsetInterval;
use lzcycles_cli::json::{cycle_records, interval_record, witness_record, Report};
use lzcycles_cli::wpc::{self, WpcError};

const ORACLE_BOUND: usize = 24;

#[derive(Parser)]
#[command(
    name = "lzcycles",
    version,
    about = "Optimal levelset persistent cycles"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the weak pseudomanifold, compatibility and genericity assumptions.
    Validate(Input),
    /// List the levelset barcode.
    Barcode {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Optimal cycle sequences for the selected intervals.
    Cycles {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        select: Select,
        /// Cross-check each total against the exhaustive search.
        #[arg(long)]
        oracle: bool,
        /// Also print the chains linking consecutive cycles.
        #[arg(long)]
        witness: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Write the barcode and every optimal sequence as JSON.
    Export {
        #[command(flatten)]
        input: Input,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Input {
    path: PathBuf,
    /// Cycle dimension p (default: complex dimension minus one).
    #[arg(long)]
    dim: Option<usize>,
    /// Worker threads; 1 runs sequentially.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct Select {
    /// Barcode index of the interval.
    #[arg(long, conflicts_with = "kind")]
    interval: Option<usize>,
    /// Interval type: oo, co, oc or cc.
    #[arg(long = "type", id = "kind")]
    kind: Option<String>,
    /// Birth value, with --type.
    #[arg(long, requires = "kind")]
    birth: Option<f64>,
    /// Death value, with --type.
    #[arg(long, requires = "kind")]
    death: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Invalid(String),
    Assumption(String),
    Internal(String),
}

impl From<WpcError> for Failure {
    fn from(e: WpcError) -> Self {
        match e {
            WpcError::Levelset(LevelsetError::IncompatibleComplex(_)) => {
                Failure::Assumption(e.to_string())
            }
            e => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::NotWeakPseudomanifold(_)
            | SolveError::AssumptionViolated(..)
            | SolveError::Levelset(LevelsetError::IncompatibleComplex(_)) => {
                Failure::Assumption(e.to_string())
            }
            SolveError::Levelset(_) => Failure::Invalid(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

fn load(input: &Input) -> Result<LevelsetContext, Failure> {
    let text = std::fs::read_to_string(&input.path)
        .map_err(|e| Failure::Invalid(format!("{}: {e}", input.path.display())))?;
    let file = wpc::parse(&text, input.dim)?;
    Ok(file.context(input.dim)?)
}

fn exec(input: &Input) -> Exec {
    match input.jobs {
        Some(1) => Exec::Sequential,
        #[cfg(feature = "parallel")]
        Some(n) => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
            Exec::Parallel
        }
        _ => Exec::Parallel,
    }
}

fn simplices(ctx: &LevelsetContext, ids: &[usize]) -> String {
    let lists: Vec<String> = ids
        .iter()
        .map(|&s| format!("{:?}", ctx.cx.simplex(s).vertices()))
        .collect();
    lists.join(" ")
}

fn validate(input: &Input) -> Result<String, Failure> {
    let ctx = load(input)?;
    let mut out = String::new();
    let mut ok = true;
    let bad = ctx.cx.weak_pseudomanifold_violations(ctx.p);
    if bad.is_empty() {
        out += &format!("weak pseudomanifold: yes (p = {})\n", ctx.p);
    } else {
        ok = false;
        out += &format!(
            "weak pseudomanifold: no; {} simplices with more than two cofaces: {}\n",
            bad.len(),
            simplices(&ctx, &bad)
        );
    }
    let bad = ctx.compatibility_violations();
    if bad.is_empty() {
        out += &format!("compatibility: ok ({} critical values)\n", ctx.m());
    } else {
        ok = false;
        out += &format!(
            "compatibility: violated by {} simplices: {}\n",
            bad.len(),
            simplices(&ctx, &bad)
        );
    }
    if ctx.f.is_injective() {
        out += "generic: yes\n";
    } else {
        out += "generic: no (ties broken by vertex label)\n";
    }
    if ok {
        Ok(out)
    } else {
        print!("{out}");
        Err(Failure::Assumption("assumptions violated".into()))
    }
}

fn problem(input: &Input) -> Result<Problem, Failure> {
    Ok(Problem::new(load(input)?)?)
}

fn barcode_report(pb: &Problem) -> Report {
    let intervals = pb
        .intervals()
        .iter()
        .enumerate()
        .map(|(i, iv)| interval_record(&pb.ctx, i, iv))
        .collect();
    Report {
        intervals,
        ..Report::default()
    }
}

fn barcode(input: &Input, format: Format) -> Result<String, Failure> {
    let pb = problem(input)?;
    let report = barcode_report(&pb);
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&report).unwrap() + "\n",
        Format::Text => report
            .intervals
            .iter()
            .map(|r| {
                format!(
                    "{} {} [{}, {}] values ({}, {}) beta={} delta={}\n",
                    r.index, r.kind, r.b, r.d, r.birth_value, r.death_value, r.beta, r.delta
                )
            })
            .collect(),
    })
}

fn selected(pb: &Problem, select: &Select) -> Result<Vec<(usize, LevelsetInterval)>, Failure> {
    let all: Vec<(usize, LevelsetInterval)> = pb.intervals().into_iter().enumerate().collect();
    if let Some(i) = select.interval {
        return all.get(i).map(|x| vec![*x]).ok_or_else(|| {
            Failure::Invalid(format!(
                "interval {i} out of range (barcode has {})",
                all.len()
            ))
        });
    }
    let Some(code) = &select.kind else {
        return Ok(all);
    };
    let kind = IntervalKind::from_code(code)
        .ok_or_else(|| Failure::Invalid(format!("unknown interval type `{code}`")))?;
    let near = |want: Option<f64>, got: f64| {
        want.is_none_or(|w| (w - got).abs() <= 1e-9 * w.abs().max(1.0))
    };
    let picked: Vec<_> = all
        .into_iter()
        .filter(|(_, iv)| {
            iv.kind == kind
                && near(select.birth, pb.ctx.crit.value(iv.b))
                && near(select.death, pb.ctx.crit.value(iv.d))
        })
        .collect();
    if picked.is_empty() {
        return Err(Failure::Invalid("no interval matches the selection".into()));
    }
    Ok(picked)
}

fn solve_report(
    pb: &Problem,
    picked: &[(usize, LevelsetInterval)],
    ex: Exec,
    witness: bool,
) -> Result<Report, Failure> {
    let ivs: Vec<LevelsetInterval> = picked.iter().map(|(_, iv)| *iv).collect();
    let seqs = ex.map(&ivs, |iv| pb.solve(iv));
    let mut report = Report::default();
    let mut total = 0.0;
    for ((i, iv), seq) in picked.iter().zip(seqs) {
        let seq = seq?;
        report.intervals.push(interval_record(&pb.ctx, *i, iv));
        let cycles = cycle_records(&pb.ctx.cx, *i, &seq);
        total += cycles.iter().map(|c| c.weight).sum::<f64>();
        report.cycles.extend(cycles);
        if witness {
            let chains = reconstruct_witness(pb, &seq)
                .ok_or_else(|| Failure::Internal(format!("interval {i}: no witness chains")))?;
            report
                .witnesses
                .push(witness_record(&pb.ctx.cx, *i, &chains));
        }
    }
    report.total_weight = Some(total);
    Ok(report)
}

fn oracle_line(
    pb: &Problem,
    iv: &LevelsetInterval,
    solver: f64,
    ex: Exec,
) -> Result<String, Failure> {
    match brute_optimal_sequence(pb, iv, ORACLE_BOUND, ex) {
        Ok(Some(best)) if best.total_weight == solver => Ok("optimal=oracle".into()),
        Ok(Some(best)) => Err(Failure::Internal(format!(
            "optimal=MISMATCH solver={solver} oracle={}",
            best.total_weight
        ))),
        Ok(None) => Err(Failure::Internal(
            "optimal=MISMATCH oracle found no valid sequence".into(),
        )),
        Err(OracleError::TooLarge(n, b)) => {
            Ok(format!("oracle=skipped (search size {n} exceeds {b})"))
        }
        Err(e) => Err(Failure::Internal(e.to_string())),
    }
}

fn cycles(
    input: &Input,
    select: &Select,
    oracle: bool,
    witness: bool,
    format: Format,
) -> Result<String, Failure> {
    let pb = problem(input)?;
    let ex = exec(input);
    let picked = selected(&pb, select)?;
    let report = solve_report(&pb, &picked, ex, witness)?;
    let mut out = String::new();
    if let Format::Json = format {
        out += &(serde_json::to_string_pretty(&report).unwrap() + "\n");
    }
    for r in &report.intervals {
        let cs: Vec<_> = report
            .cycles
            .iter()
            .filter(|c| c.interval == r.index)
            .collect();
        let total: f64 = cs.iter().map(|c| c.weight).sum();
        if let Format::Text = format {
            out += &format!(
                "interval {} {} [{}, {}] cycles={} total_weight={total}\n",
                r.index,
                r.kind,
                r.b,
                r.d,
                cs.len()
            );
            for c in &cs {
                out += &format!("  slot {} weight={} {:?}\n", c.slot, c.weight, c.simplices);
            }
            if let Some(w) = report.witnesses.iter().find(|w| w.interval == r.index) {
                for (k, a) in w.chains.iter().enumerate() {
                    out += &format!("  witness {k} {a:?}\n");
                }
            }
        }
        if oracle {
            let iv = picked.iter().find(|(i, _)| *i == r.index).unwrap().1;
            out += &format!(
                "interval {} {}\n",
                r.index,
                oracle_line(&pb, &iv, total, ex)?
            );
        }
    }
    Ok(out)
}

fn export(input: &Input, output: Option<&Path>) -> Result<String, Failure> {
    let pb = problem(input)?;
    let picked: Vec<_> = pb.intervals().into_iter().enumerate().collect();
    let report = solve_report(&pb, &picked, exec(input), false)?;
    let text = serde_json::to_string_pretty(&report).unwrap() + "\n";
    match output {
        Some(path) => {
            std::fs::write(path, text)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate(input) => validate(input),
        Command::Barcode { input, format } => barcode(input, *format),
        Command::Cycles {
            input,
            select,
            oracle,
            witness,
            format,
        } => cycles(input, select, *oracle, *witness, *format),
        Command::Export { input, output } => export(input, output.as_deref()),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Assumption(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
