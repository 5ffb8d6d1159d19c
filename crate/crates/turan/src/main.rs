//! Command-line front end: build graphs, certify freeness, run lemma
//! oracles, tabulate bound ratios, and run the full claim suite.
//!
//! Exit codes: 0 success (claim holds), 1 claim fails (a `not_free`
//! verdict or an out-of-bound lemma), 2 parameter or hypothesis error,
//! 3 I/O or malformed-file error.

use std::fmt;
use std::num::NonZeroUsize;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use turan::field::make_field;
use turan::graph::build_graph;
use turan::graphfile::{export_dimacs, export_graph, import_graph, FileError};
use turan::report::{bounds_table, csv_header, csv_line, format_table, Family};
use turan::verify::{
    certify_kab_free, theorem_suite, verify_lemma_ag, verify_lemma_l, AgMode, SuiteParams,
    Verdict, VerifyError, VerifyOptions, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "turan", version, about = "Builds K_{a,b}-free graphs over finite fields and certifies their claims by exhaustive search")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build G(q, t) over GF(p^k), print `n m loops`, optionally write it.
    Build(BuildArgs),
    /// Certify that a graph file avoids K_{a,b}; prints a certificate.
    Verify(VerifyArgs),
    /// Run a solution-count lemma oracle; prints a report.
    Lemma(LemmaArgs),
    /// Tabulate edge-density ratios against asymptotic targets.
    Table(TableArgs),
    /// Build and check every published claim at (q, t, r).
    Suite(SuiteArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Field characteristic (prime).
    #[arg(long)]
    p: u64,
    /// Field extension degree.
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// Multiplicative subgroup order (must divide p^k - 1).
    #[arg(long)]
    t: u64,
    /// Write the graph to this path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a DIMACS rendering next to --out (extension `dimacs`).
    #[arg(long, requires = "out")]
    dimacs: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file to import.
    graph: PathBuf,
    /// Size of the scanned side of K_{a,b}.
    #[arg(long)]
    a: usize,
    /// Size of the common-neighborhood side of K_{a,b}.
    #[arg(long)]
    b: u64,
    /// Worker threads (default: TURAN_WORKERS, then all cores).
    #[arg(long)]
    workers: Option<usize>,
    /// Maximum subsets the scan may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Seed recorded in the certificate.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum LemmaName {
    /// Solutions of ax + by = 1 with x, y in the order-(q+1) subgroup.
    L,
    /// Solutions of the r-equation norm system N(x + d_i) = c_i.
    Ag,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Exhaustive when within budget, sampled otherwise.
    Auto,
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct LemmaArgs {
    /// Which lemma oracle to run.
    which: LemmaName,
    /// Base prime power q.
    #[arg(long)]
    q: u64,
    /// Number of norm equations (lemma ag only).
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Systems to draw in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Maximum systems an exhaustive scan may enumerate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyName {
    /// G(q^2, q+1), K_{3,3}-free.
    K33,
    /// G(q, t), K_{2,t+1}-free.
    K2t,
    /// G(q^(r-1), t(q^(r-2)+...+1)), K_{r, t^(r-1)(r-1)!+1}-free.
    General,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    family: FamilyName,
    /// Comma-separated base parameters, e.g. `2,3,5,7`.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
    /// Subgroup scale t (k2t: required; general: default 1).
    #[arg(long)]
    t: Option<u64>,
    /// Uniformity r (general family only).
    #[arg(long)]
    r: Option<u32>,
    /// Also write the rows as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    /// Base prime power q.
    #[arg(long)]
    q: u64,
    /// Subgroup scale t (must divide q - 1).
    #[arg(long)]
    t: u64,
    /// Uniformity r >= 3.
    #[arg(long)]
    r: u32,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples when lemma ag falls back to sampled mode.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
}

enum CliError {
    /// Parameter or hypothesis violation: exit 2.
    Param(String),
    /// Missing, unreadable, or malformed file: exit 3.
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Param(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Param(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<turan::FieldError> for CliError {
    fn from(e: turan::FieldError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<turan::GraphError> for CliError {
    fn from(e: turan::GraphError) -> Self {
        CliError::Param(e.to_string())
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::Io(e.to_string())
    }
}

fn resolve_workers(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("TURAN_WORKERS").ok().and_then(|v| v.parse().ok())
    })
    .unwrap_or_else(|| {
        std::thread::available_parallelism().map(NonZeroUsize::get).unwrap_or(1)
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(command: Command) -> Result<u8, CliError> {
    match command {
        Command::Build(args) => cmd_build(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Lemma(args) => cmd_lemma(args),
        Command::Table(args) => cmd_table(args),
        Command::Suite(args) => cmd_suite(args),
    }
}

fn cmd_build(args: BuildArgs) -> Result<u8, CliError> {
    let field = make_field(args.p, args.k)?;
    let g = build_graph(&field, args.t)?;
    if let Some(out) = &args.out {
        export_graph(&g, out)?;
        if args.dimacs {
            export_dimacs(&g, &out.with_extension("dimacs"))?;
        }
    }
    let h = g.header();
    println!("n={} m={} loops={}", h.n, h.m, h.loops);
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    let g = import_graph(&args.graph)?;
    let opts = VerifyOptions {
        workers: resolve_workers(args.workers),
        budget: args.budget,
        seed: args.seed,
    };
    let cert = certify_kab_free(&g, args.a, args.b, &opts)?;
    println!("{}", cert.record());
    Ok(match cert.verdict {
        Verdict::Free => 0,
        Verdict::NotFree => 1,
    })
}

fn cmd_lemma(args: LemmaArgs) -> Result<u8, CliError> {
    let opts = VerifyOptions { workers: 1, budget: args.budget, seed: args.seed };
    let report = match args.which {
        LemmaName::L => verify_lemma_l(args.q, &opts)?,
        LemmaName::Ag => {
            let r = args
                .r
                .ok_or_else(|| CliError::Param("lemma ag needs --r".to_owned()))?;
            match args.mode {
                Mode::Exhaustive => verify_lemma_ag(args.q, r, AgMode::Exhaustive, &opts)?,
                Mode::Sampled => {
                    verify_lemma_ag(args.q, r, AgMode::Sampled { samples: args.samples }, &opts)?
                }
                Mode::Auto => match verify_lemma_ag(args.q, r, AgMode::Exhaustive, &opts) {
                    Err(VerifyError::BudgetExceeded { .. }) => verify_lemma_ag(
                        args.q,
                        r,
                        AgMode::Sampled { samples: args.samples },
                        &opts,
                    )?,
                    other => other?,
                },
            }
        }
    };
    println!("{}", report.record());
    Ok(if report.within_bound() { 0 } else { 1 })
}

fn cmd_table(args: TableArgs) -> Result<u8, CliError> {
    if args.q.is_empty() {
        return Err(CliError::Param("table needs at least one q (--q 2,3,5)".to_owned()));
    }
    let family = match args.family {
        FamilyName::K33 => Family::K33,
        FamilyName::K2t => {
            let t = args
                .t
                .ok_or_else(|| CliError::Param("family k2t needs --t".to_owned()))?;
            Family::K2t { t }
        }
        FamilyName::General => {
            let r = args
                .r
                .ok_or_else(|| CliError::Param("family general needs --r".to_owned()))?;
            Family::General { t: args.t.unwrap_or(1), r }
        }
    };
    let rows = bounds_table(family, &args.q);
    print!("{}", format_table(&rows));
    if let Some(path) = &args.csv {
        let mut csv = String::from(csv_header());
        csv.push('\n');
        for (_, row) in &rows {
            if let Ok(row) = row {
                csv.push_str(&csv_line(row));
                csv.push('\n');
            }
        }
        std::fs::write(path, csv).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    if rows.iter().any(|(_, r)| r.is_err()) {
        return Err(CliError::Param("some rows failed to build".to_owned()));
    }
    Ok(0)
}

fn cmd_suite(args: SuiteArgs) -> Result<u8, CliError> {
    let params = SuiteParams {
        base_q: args.q,
        t: args.t,
        r: args.r,
        opts: VerifyOptions {
            workers: resolve_workers(args.workers),
            budget: args.budget,
            seed: args.seed,
        },
        ag_samples: args.samples,
    };
    let entries = theorem_suite(&params)?;
    let mut all_passed = true;
    for entry in &entries {
        println!("{}", entry.record());
        all_passed &= entry.passed();
    }
    Ok(if all_passed { 0 } else { 1 })
}
