//! Command-line front end.
//!
//! Exit codes: 0 all checks pass, 1 some check failed, 2 inconclusive checks
//! but no failures, 3 usage or configuration error.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use iwcontract::contraction::{Contraction, IndexEstimate};
use iwcontract::invariants;
use iwcontract::liecore::{build_algebra, AlgebraSpec, Family, RootDatum};
use iwcontract::rational;
use iwcontract::verify::{self, Mode, Options, Report, Status, Suite, Workspace};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable capping the worker threads used to run suites.
pub const THREADS_ENV: &str = "IWCONTRACT_THREADS";

#[derive(Debug, Parser)]
#[command(name = "iwcontract", version, about = "Invariants of contracted classical Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Structured basis, trace form and root datum as JSON
    Build(Common),
    /// Generators of the coadjoint and adjoint invariants as JSON
    Invariants(Common),
    /// Run verification suites and write a JSON report
    Verify(Common),
    /// Estimate the index from Kirillov ranks at random points
    Index(Common),
}

#[derive(Debug, Args)]
struct Common {
    /// A, B, C or D
    #[arg(long, value_parser = parse_family)]
    family: Family,
    #[arg(long)]
    rank: usize,
    /// symbolic or sampled; defaults by algebra size
    #[arg(long)]
    mode: Option<Mode>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Options::DEFAULT_SAMPLES as u64, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Comma list of structure, invariance, index, regularity, nullcone, highest, all
    #[arg(long, default_value = "all")]
    suites: String,
    /// Output file; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parsed configuration for one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub spec: AlgebraSpec,
    pub options: Options,
    pub suites: Vec<Suite>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Build,
    Invariants,
    Verify,
    Index,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: iwcontract::liecore::LieError| e.to_string())
}

/// Expands a comma list of suite names. `all` selects every suite that runs
/// for `family` without extra input; naming an unavailable suite is an error.
pub fn parse_suites(list: &str, family: Family) -> Result<Vec<Suite>, String> {
    let mut out = Vec::new();
    for item in list.split(',').map(str::trim) {
        if item == "all" {
            out.extend(Suite::ALL.into_iter().filter(|s| s.available_for(family)));
            continue;
        }
        let suite: Suite = item.parse()?;
        if !suite.available_for(family) {
            return Err(format!("suite `{item}` is not available for type {family}"));
        }
        out.push(suite);
    }
    out.sort();
    out.dedup();
    if out.is_empty() {
        return Err("no suites selected".into());
    }
    Ok(out)
}

impl CliConfig {
    pub fn parse<I, T>(argv: I) -> Result<CliConfig, String>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(argv).map_err(|e| e.render().to_string())?;
        let (command, c) = match cli.command {
            Command::Build(c) => (CommandKind::Build, c),
            Command::Invariants(c) => (CommandKind::Invariants, c),
            Command::Verify(c) => (CommandKind::Verify, c),
            Command::Index(c) => (CommandKind::Index, c),
        };
        let spec = AlgebraSpec::new(c.family, c.rank).map_err(|e| e.to_string())?;
        let options = Options {
            mode: c.mode.unwrap_or_else(|| Mode::default_for(spec)),
            seed: c.seed,
            samples: c.samples as usize,
        };
        let suites = parse_suites(&c.suites, spec.family())?;
        Ok(CliConfig { command, spec, options, suites, out: c.out })
    }
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    family: Family,
    rank: usize,
    dim: usize,
    matrix_dim: usize,
    labels: &'a [String],
    matrices: Vec<Vec<Vec<String>>>,
    gram: Vec<Vec<String>>,
    roots: &'a RootDatum,
}

#[derive(Serialize)]
struct IndexOutput {
    family: Family,
    rank: usize,
    dim: usize,
    seed: u64,
    samples: usize,
    estimate: IndexEstimate,
}

fn strings(row: &[rational::Rational]) -> Vec<String> {
    row.iter().map(rational::to_string).collect()
}

fn emit<T: Serialize>(value: &T, out: &Option<PathBuf>) -> Result<(), String> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got `{v}`"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

/// Runs the selected suites, in parallel when the pool allows it. The report
/// ordering does not depend on scheduling.
pub fn verify_report(cfg: &CliConfig) -> Result<Report, String> {
    let pool = thread_pool()?;
    let ws = Workspace::new(cfg.spec).map_err(|e| e.to_string())?;
    let parts: Vec<_> =
        pool.install(|| cfg.suites.par_iter().map(|&s| verify::run_suite(&ws, s, &cfg.options)).collect());
    let mut checks = Vec::new();
    for part in parts {
        checks.extend(part.map_err(|e| e.to_string())?);
    }
    Ok(Report::new(cfg.spec, &cfg.options, checks))
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail => EXIT_FAIL,
        Status::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

/// Executes one configured command and returns its exit code.
pub fn execute(cfg: &CliConfig) -> Result<i32, String> {
    let spec = cfg.spec;
    match cfg.command {
        CommandKind::Build => {
            let alg = build_algebra(spec).map_err(|e| e.to_string())?;
            let out = BuildOutput {
                family: spec.family(),
                rank: spec.rank(),
                dim: alg.dim(),
                matrix_dim: spec.matrix_dim(),
                labels: &alg.basis.labels,
                matrices: alg.basis.matrices.iter().map(|m| m.rows().iter().map(|r| strings(r)).collect()).collect(),
                gram: alg.gram().iter().map(|r| strings(r)).collect(),
                roots: &alg.roots,
            };
            emit(&out, &cfg.out)?;
            Ok(EXIT_PASS)
        }
        CommandKind::Invariants => {
            let alg = build_algebra(spec).map_err(|e| e.to_string())?;
            let set = invariants::invariant_set(&alg).map_err(|e| e.to_string())?;
            emit(&invariants::dump(&alg, &set), &cfg.out)?;
            Ok(EXIT_PASS)
        }
        CommandKind::Index => {
            let q = Contraction::build(spec).map_err(|e| e.to_string())?;
            let estimate = q.index_estimate(cfg.options.samples, cfg.options.seed);
            let code = if !estimate.conclusive {
                EXIT_INCONCLUSIVE
            } else if estimate.index == spec.rank() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            let out = IndexOutput {
                family: spec.family(),
                rank: spec.rank(),
                dim: q.dim(),
                seed: cfg.options.seed,
                samples: cfg.options.samples,
                estimate,
            };
            emit(&out, &cfg.out)?;
            Ok(code)
        }
        CommandKind::Verify => {
            let report = verify_report(cfg)?;
            emit(&report, &cfg.out)?;
            Ok(status_code(report.status()))
        }
    }
}

const GRAMMAR: &str = "usage: iwcontract <build|invariants|verify|index> --family <A|B|C|D> --rank <l> \
[--mode <symbolic|sampled>] [--seed <n>] [--samples <n>] \
[--suites <structure,invariance,index,regularity,nullcone,highest,all>] [--out <path>]";

/// Parses `argv` (program name first) and runs the command.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let wants_help = args.iter().skip(1).any(|a| a == "--help" || a == "-h" || a == "--version" || a == "-V");
    let cfg = match CliConfig::parse(args) {
        Ok(cfg) => cfg,
        Err(msg) if wants_help => {
            print!("{msg}");
            return EXIT_PASS;
        }
        Err(msg) => {
            eprintln!("error: {}", msg.trim_end().trim_start_matches("error: "));
            eprintln!("{GRAMMAR}");
            return EXIT_USAGE;
        }
    };
    match execute(&cfg) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<CliConfig, String> {
        CliConfig::parse(std::iter::once("iwcontract").chain(s.split_whitespace()))
    }

    #[test]
    fn defaults() {
        let c = parse("verify --family C --rank 3").unwrap();
        assert_eq!(c.command, CommandKind::Verify);
        assert_eq!(c.options, Options { mode: Mode::Symbolic, seed: 0, samples: 25 });
        assert_eq!(c.suites.len(), 5);
        assert!(c.out.is_none());
        let d = parse("index --family D --rank 4").unwrap();
        assert_eq!(d.options.mode, Mode::Sampled);
    }

    #[test]
    fn suite_lists() {
        assert_eq!(parse_suites("index,structure,index", Family::B).unwrap(), vec![Suite::Structure, Suite::Index]);
        assert_eq!(parse_suites("all", Family::A).unwrap().len(), 6);
        assert!(parse_suites("nullcone", Family::D).is_err());
        assert!(parse_suites("bogus", Family::A).is_err());
    }

    #[test]
    fn usage_errors() {
        for bad in [
            "build --family D --rank 2",
            "build --family E --rank 6",
            "build --rank 2",
            "verify --family A --rank 2 --mode both",
            "verify --family A --rank 2 --samples 0",
            "frobnicate --family A --rank 2",
            "build -f A --rank 2",
        ] {
            assert!(parse(bad).is_err(), "{bad}");
            assert_eq!(run_cli(std::iter::once("iwcontract").chain(bad.split_whitespace())), EXIT_USAGE, "{bad}");
        }
    }
}
