//! Command-line front end: scans, alpha tables, girth censuses, filter
//! breakdowns and power-sum cross-checks, written as JSONL or CSV reports.
//!
//! Exit codes: 0 = all expectations met, 1 = mathematical discrepancy
//! (including golden-file mismatch), 2 = usage error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use girth8::monograph::GirthMode;
use girth8::report::{
    self, csv_body, jsonl_body, prime_power, GirthTarget, Header, Method, OutputFormat,
    ScanKind, ScanOptions,
};

#[derive(Parser)]
#[command(name = "girth8", version, about = "Permutation-polynomial and girth toolkit for monomial graphs over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether A_k and/or B_k permute F_q across a k-range.
    Scan(ScanArgs),
    /// Tabulate alpha(p) for all odd primes up to a bound.
    Alpha(AlphaArgs),
    /// Compute girths of monomial graphs G_q(X^{m1}Y^{n1}, X^{m2}Y^{n2}).
    Girth(GirthArgs),
    /// Per-k breakdown of the necessary-condition filters.
    Filters(FiltersArgs),
    /// Cross-check closed-form power sums against direct evaluation.
    PowsumXcheck(PowsumArgs),
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Jsonl)]
    format: FormatArg,
    /// Compare the report body against this stored report (header ignored).
    #[arg(long)]
    golden: Option<PathBuf>,
}

#[derive(Args)]
struct QArgs {
    /// Field order(s); repeatable. Each must be a prime power >= 2.
    #[arg(long = "q")]
    q: Vec<u64>,
    /// Use every prime power from 2 up to this bound instead of --q.
    #[arg(long = "q-max", conflicts_with = "q")]
    q_max: Option<u64>,
}

impl QArgs {
    fn resolve(&self) -> Result<Vec<u64>, String> {
        if let Some(max) = self.q_max {
            Ok((2..=max).filter(|&q| prime_power(q).is_ok()).collect())
        } else if self.q.is_empty() {
            Err("provide --q at least once, or --q-max".into())
        } else {
            for &q in &self.q {
                prime_power(q).map_err(|e| e.to_string())?;
            }
            Ok(self.q.clone())
        }
    }
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    q: QArgs,
    /// Which family to test.
    #[arg(long, value_enum, default_value_t = KindArg::Joint)]
    kind: KindArg,
    /// Permutation test to run.
    #[arg(long, value_enum, default_value_t = MethodArg::Brute)]
    method: MethodArg,
    /// Smallest exponent k to test (default 1).
    #[arg(long = "k-from")]
    k_from: Option<u64>,
    /// Largest exponent k to test (default q-1).
    #[arg(long = "k-to")]
    k_to: Option<u64>,
    /// Worker threads; the output is identical for any value.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AlphaArgs {
    /// Largest prime to include.
    #[arg(long = "p-max")]
    p_max: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GirthArgs {
    #[command(flatten)]
    q: QArgs,
    /// Which graphs to measure.
    #[arg(long, value_enum, default_value_t = TargetArg::Gamma3)]
    target: TargetArg,
    /// Exponents for --target single, as m1,n1,m2,n2.
    #[arg(long, value_delimiter = ',', num_args = 4)]
    exponents: Option<Vec<u64>>,
    /// BFS root strategy.
    #[arg(long, value_enum, default_value_t = ModeArg::Full)]
    mode: ModeArg,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FiltersArgs {
    /// Field order (prime power).
    #[arg(long)]
    q: u64,
    /// Smallest exponent k (default 1).
    #[arg(long = "k-from", default_value_t = 1)]
    k_from: u64,
    /// Largest exponent k (default q-1).
    #[arg(long = "k-to")]
    k_to: Option<u64>,
    /// Cross-check every filter failure against brute force.
    #[arg(long)]
    soundness: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct PowsumArgs {
    #[command(flatten)]
    q: QArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    A,
    B,
    Joint,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Hermite,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Symmetry,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    /// G_q(XY, XY^2).
    Gamma3,
    /// G_q(XY, X^{k*}Y^{(2k)*}) for k in [1, q-1].
    Family,
    /// All (m1, n1, m2, n2) in [1, q-1]^4.
    Full,
    /// One graph given by --exponents.
    Single,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Jsonl,
    Csv,
}

impl From<FormatArg> for OutputFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Jsonl => OutputFormat::Jsonl,
            FormatArg::Csv => OutputFormat::Csv,
        }
    }
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn internal_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

/// Emit the report and fold in the golden comparison; returns the exit code.
fn finish(output: &OutputArgs, body: Vec<String>, clean: bool) -> ExitCode {
    let command: Vec<String> = std::env::args().collect();
    let header = Header::new(command.join(" "));
    let result = match &output.out {
        Some(path) => fs::File::create(path)
            .map_err(report::ReportError::from)
            .and_then(|f| report::write_report(f, &header, &body)),
        None => report::write_report(std::io::stdout().lock(), &header, &body),
    };
    if let Err(e) = result {
        return internal_error(&e.to_string());
    }
    let mut ok = clean;
    if let Some(golden) = &output.golden {
        match fs::read_to_string(golden) {
            Ok(content) => {
                let stored = report::strip_header(&content);
                if stored != body.iter().map(String::as_str).collect::<Vec<_>>() {
                    eprintln!("golden mismatch: {} differs from generated body", golden.display());
                    ok = false;
                }
            }
            Err(e) => return usage_error(&format!("cannot read golden file: {e}")),
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn format_body<T: serde::Serialize>(records: &[T], format: FormatArg) -> Vec<String> {
    match format {
        FormatArg::Jsonl => jsonl_body(records),
        FormatArg::Csv => csv_body(records),
    }
}

fn run_scan(args: ScanArgs) -> ExitCode {
    let q_list = match args.q.resolve() {
        Ok(qs) => qs,
        Err(e) => return usage_error(&e),
    };
    let opts = ScanOptions {
        kind: match args.kind {
            KindArg::A => ScanKind::A,
            KindArg::B => ScanKind::B,
            KindArg::Joint => ScanKind::Joint,
        },
        method: match args.method {
            MethodArg::Brute => Method::Brute,
            MethodArg::Hermite => Method::Hermite,
            MethodArg::Both => Method::Both,
        },
        k_from: args.k_from,
        k_to: args.k_to,
        jobs: args.jobs,
    };
    let out = match report::run_scan(&q_list, &opts) {
        Ok(out) => out,
        Err(e) => return usage_error(&e.to_string()),
    };
    let clean = out.disagreements.is_empty();
    for (q, k) in &out.disagreements {
        eprintln!("method disagreement at q={q}, k={k}");
    }
    for (q, k) in &out.discrepancies {
        eprintln!("note: permutation set differs from p-power set at q={q}, k={k}");
    }
    finish(&args.output, format_body(&out.records, args.output.format), clean)
}

fn run_alpha(args: AlphaArgs) -> ExitCode {
    if args.p_max < 3 {
        return usage_error("--p-max must be at least 3");
    }
    let (rows, summary) = report::run_alpha(args.p_max);
    eprintln!(
        "{} odd primes, {} with alpha(p) < p-1",
        summary.primes, summary.exceptions
    );
    finish(&args.output, format_body(&rows, args.output.format), true)
}

fn run_girth(args: GirthArgs) -> ExitCode {
    let q_list = match args.q.resolve() {
        Ok(qs) => qs,
        Err(e) => return usage_error(&e),
    };
    let target = match args.target {
        TargetArg::Gamma3 => GirthTarget::Gamma3,
        TargetArg::Family => GirthTarget::FamilyXkY2k,
        TargetArg::Full => GirthTarget::FullScan,
        TargetArg::Single => match &args.exponents {
            Some(v) if v.len() == 4 => GirthTarget::Single {
                m1: v[0],
                n1: v[1],
                m2: v[2],
                n2: v[3],
            },
            _ => return usage_error("--target single requires --exponents m1,n1,m2,n2"),
        },
    };
    let mode = match args.mode {
        ModeArg::Full => GirthMode::Full,
        ModeArg::Symmetry => GirthMode::Symmetry,
    };
    let records = match report::run_girth(&q_list, target, mode) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    finish(&args.output, format_body(&records, args.output.format), true)
}

fn run_filters(args: FiltersArgs) -> ExitCode {
    let k_to = args.k_to.unwrap_or(args.q.saturating_sub(1));
    let out = match report::run_filters(args.q, args.k_from, k_to, args.soundness) {
        Ok(out) => out,
        Err(e) => return usage_error(&e.to_string()),
    };
    let clean = out.unsound.is_empty();
    for (q, k) in &out.unsound {
        eprintln!("unsound filter at q={q}, k={k}: filter failed but brute force passes");
    }
    finish(&args.output, format_body(&out.reports, args.output.format), clean)
}

fn run_powsum(args: PowsumArgs) -> ExitCode {
    let q_list = match args.q.resolve() {
        Ok(qs) => qs,
        Err(e) => return usage_error(&e),
    };
    let records = match report::run_powsum_xcheck(&q_list) {
        Ok(r) => r,
        Err(e) => return usage_error(&e.to_string()),
    };
    let clean = records.iter().all(|r| r.mismatches == 0);
    for r in records.iter().filter(|r| r.mismatches > 0) {
        eprintln!("power-sum mismatch at q={}: {} of {} pairs", r.q, r.mismatches, r.pairs_checked);
    }
    finish(&args.output, format_body(&records, args.output.format), clean)
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Scan(args) => run_scan(args),
        Command::Alpha(args) => run_alpha(args),
        Command::Girth(args) => run_girth(args),
        Command::Filters(args) => run_filters(args),
        Command::PowsumXcheck(args) => run_powsum(args),
    }
}
