//! Subcommand interface over the library. Exit codes: 0 all checks pass,
//! 1 a check failed (the reproducer is printed), 2 usage error.
//!
//! Words are written over `{a, b}` with `_` for the empty word; set
//! descriptors use the `W:word`, `A:word:p:r`, `B:word:k` text forms.

use crate::harness::{
    self, export_tree, reports_to_canonical_json, CheckParams, CheckReport, TreeFormat, CHECK_IDS,
};
use crate::metric::Lambda;
use crate::setfamily::Family;
use crate::words::Word;
use crate::Error;
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;

#[derive(Parser)]
#[command(
    name = "contrafix",
    about = "Exact ultrametric word-space explorer: enumeration, distances, axiom checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the enumeration S_0, S_1, … up to a σ-length bound
    Enumerate(EnumerateArgs),
    /// Exact distance between two words
    Dist(DistArgs),
    /// Export the family tree as DOT or JSON
    Tree(TreeArgs),
    /// Run the named verification suites
    Verify(VerifyArgs),
    /// Certify the contraction property over all short word pairs
    Contraction(ContractionArgs),
    /// Scan for pairs u, wu sharing a set, up to a rank bound
    Pairs(PairsArgs),
    /// Orbit diagnostics for the composition named by a word
    Orbit(OrbitArgs),
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(long)]
    max_sigma_len: usize,
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct DistArgs {
    x: String,
    y: String,
    /// Render the exact value for this contraction factor, e.g. 1/2
    #[arg(long)]
    lambda: Option<String>,
}

#[derive(Args)]
struct TreeArgs {
    #[arg(long)]
    sigma_len: usize,
    #[arg(long, value_enum, default_value_t = TreeFormatArg::Dot)]
    format: TreeFormatArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum TreeFormatArg {
    Dot,
    Json,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated check ids, or `all`
    #[arg(long, default_value = "all")]
    checks: String,
    /// Depth preset: `default` or `shallow`
    #[arg(long, default_value = "default")]
    depth: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit the canonical JSON report instead of the table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ContractionArgs {
    #[arg(long, default_value_t = 7)]
    max_len: usize,
}

#[derive(Args)]
struct PairsArgs {
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 1000)]
    max_rank: u64,
    #[arg(long, default_value_t = 48)]
    len_bound: usize,
}

#[derive(Args)]
struct OrbitArgs {
    #[arg(long)]
    word: String,
    #[arg(long, default_value_t = 8)]
    steps: usize,
}

/// Entry point used by the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders --help/--version through the error path with status 0
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn execute(cli: Cli) -> Result<i32, Error> {
    let family = Family::new();
    match cli.command {
        Command::Enumerate(args) => enumerate(&family, &args),
        Command::Dist(args) => dist(&family, &args),
        Command::Tree(args) => {
            let format = match args.format {
                TreeFormatArg::Dot => TreeFormat::Dot,
                TreeFormatArg::Json => TreeFormat::Json,
            };
            print!("{}", export_tree(&family, args.sigma_len, format)?);
            Ok(0)
        }
        Command::Verify(args) => verify(&family, &args),
        Command::Contraction(args) => contraction(&family, &args),
        Command::Pairs(args) => pairs(&family, &args),
        Command::Orbit(args) => orbit(&family, &args),
    }
}

fn enumerate(family: &Family, args: &EnumerateArgs) -> Result<i32, Error> {
    let mut rows = Vec::new();
    for len in 0..=args.max_sigma_len {
        for set in family.enumerate_sigma_len(len)? {
            let rank = family.rank(&set)?;
            rows.push((
                rank,
                set.to_string(),
                set.kind().to_string(),
                family.sigma(&set).to_string(),
                len,
            ));
        }
    }
    rows.sort_by_key(|r| r.0);
    if args.json {
        let objects: Vec<serde_json::Value> = rows
            .iter()
            .map(|(n, descriptor, kind, sigma, sigma_len)| {
                serde_json::json!({
                    "n": n,
                    "descriptor": descriptor,
                    "type": kind,
                    "sigma": sigma,
                    "sigma_len": sigma_len,
                    "diam_exponent": n,
                })
            })
            .collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&objects).expect("rows serialize")
        );
    } else if args.csv {
        println!("n,descriptor,type,sigma,sigma_len,diam_exponent");
        for (n, descriptor, kind, sigma, sigma_len) in &rows {
            println!("{n},{descriptor},{kind},{sigma},{sigma_len},{n}");
        }
    } else {
        println!(
            "{:>6}  {:<16} {:<4} {:<16} {:>9}  {:>8}",
            "n", "descriptor", "type", "sigma", "sigma_len", "diam"
        );
        for (n, descriptor, kind, sigma, sigma_len) in &rows {
            println!("{n:>6}  {descriptor:<16} {kind:<4} {sigma:<16} {sigma_len:>9}  λ^{n}");
        }
    }
    Ok(0)
}

fn dist(family: &Family, args: &DistArgs) -> Result<i32, Error> {
    let x: Word = args.x.parse()?;
    let y: Word = args.y.parse()?;
    let distance = family.distance(&x, &y)?;
    match distance.exponent() {
        None => println!("d({x}, {y}) = 0 (identical words)"),
        Some(k) => match &args.lambda {
            None => println!("d({x}, {y}) = λ^{k}"),
            Some(text) => {
                let lambda: Lambda = text.parse()?;
                let (num, den) = lambda.pow(k);
                println!("λ^{k} = {num}/{den} = {}", lambda.decimal(k, 12));
            }
        },
    }
    Ok(0)
}

fn verify(family: &Family, args: &VerifyArgs) -> Result<i32, Error> {
    let mut params = match args.depth.as_str() {
        "default" => CheckParams::default(),
        "shallow" => CheckParams::shallow(),
        other => {
            return Err(Error::Parse {
                input: other.to_string(),
                what: "a depth preset (default or shallow)",
            })
        }
    };
    params.seed = args.seed;
    let ids: Vec<&str> = if args.checks == "all" {
        CHECK_IDS.to_vec()
    } else {
        let mut ids = Vec::new();
        for id in args.checks.split(',') {
            let id = id.trim();
            match CHECK_IDS.iter().find(|known| **known == id) {
                Some(known) => ids.push(*known),
                None => return Err(Error::UnknownCheck(id.to_string())),
            }
        }
        ids
    };
    let reports = harness::run_checks(family, &ids, &params)?;
    if args.json {
        print!("{}", reports_to_canonical_json(&reports));
    } else {
        for report in &reports {
            print_report_line(report);
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if failed > 0 {
        eprintln!("{failed} check(s) failed");
        Ok(1)
    } else {
        Ok(0)
    }
}

fn print_report_line(report: &CheckReport) {
    let status = if report.passed() { "pass" } else { "FAIL" };
    let runtime = report
        .runtime_ms
        .map(|ms| format!("{ms} ms"))
        .unwrap_or_default();
    println!("{:<12} {:<4} {:>9}", report.check_id, status, runtime);
    if let Some(detail) = &report.details {
        println!("             {detail}");
    }
    if let Some(counterexample) = &report.counterexample {
        println!("             reproducer: {counterexample}");
    }
}

fn contraction(family: &Family, args: &ContractionArgs) -> Result<i32, Error> {
    let params = CheckParams {
        contraction_word_len: args.max_len,
        ..CheckParams::default()
    };
    let report = harness::run_check(family, "contraction", &params)?;
    print_report_line(&report);
    Ok(if report.passed() { 0 } else { 1 })
}

fn pairs(family: &Family, args: &PairsArgs) -> Result<i32, Error> {
    let word: Word = args.word.parse()?;
    let report = family.pair_scan(&word, args.max_rank, args.len_bound)?;
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    print!("{json}");
    Ok(0)
}

fn orbit(family: &Family, args: &OrbitArgs) -> Result<i32, Error> {
    let word: Word = args.word.parse()?;
    if word.is_empty() {
        return Err(Error::EmptyWordPower);
    }
    println!("orbit of x ↦ {word}·x starting from {word}:");
    for n in 1..=args.steps {
        let point = word.repeated(n);
        println!("  step {n:>3}: {point}");
    }
    let tail = family.orbit_tail_sets(&word)?;
    println!("sets absorbing the orbit tail ({}):", tail.len());
    let mut max_rank = 0;
    for set in &tail {
        let rank = family.rank(set)?;
        max_rank = max_rank.max(rank);
        println!("  S_{rank:<6} {set}");
    }
    println!("max tail rank: {max_rank}");
    println!(
        "proper Cauchy: {} (the tail list is finite, so no composition fixes a point here)",
        family.cauchy_certificate(&word)?
    );
    Ok(0)
}
