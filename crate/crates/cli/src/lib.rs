//! Command-line front end for `lrtree`.
//!
//! Exit codes: 0 success, 1 usage error, 2 read/parse/write error,
//! 3 oracle mismatch under `query --check`.

pub mod bench;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use lrtree::io::{parse_points, parse_queries, write_points, write_report, QueryResult};
use lrtree::{brute_force_query, gen_points, Distribution, GeneratorConfig, LayeredRangeTree, QueryStats};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "lrtree", version, about = "Layered range tree workloads, queries and benchmarks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a deterministic point file.
    Gen(GenArgs),
    /// Answer a file of box queries against a point file.
    Query(QueryArgs),
    /// Measure build and query costs over a range of sizes (CSV on stdout).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub dims: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// `uniform` or `grid:<side>`.
    #[arg(long, default_value = "uniform")]
    pub dist: DistArg,
    /// Output path, or `stdout`.
    #[arg(long, default_value = "stdout")]
    pub out: String,
}

#[derive(Debug, Args)]
pub struct QueryArgs {
    #[arg(long)]
    pub points: PathBuf,
    #[arg(long)]
    pub dims: usize,
    #[arg(long)]
    pub queries: PathBuf,
    /// Report only the number of hits per query.
    #[arg(long)]
    pub count_only: bool,
    /// Verify every answer against a brute-force scan.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub dims: usize,
    /// Comma-separated ascending point counts.
    #[arg(long, value_delimiter = ',', required = true)]
    pub sizes: Vec<usize>,
    #[arg(long, default_value_t = 1000)]
    pub queries: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = bench::DEFAULT_SELECTIVITY)]
    pub selectivity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DistArg(pub Distribution);

impl FromStr for DistArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "uniform" {
            return Ok(DistArg(Distribution::Uniform));
        }
        match s.strip_prefix("grid:").map(str::parse::<u64>) {
            Some(Ok(side)) if side >= 1 => Ok(DistArg(Distribution::Grid(side))),
            _ => Err(format!("expected `uniform` or `grid:<side>` with side >= 1, got `{s}`")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Input(_) => 2,
            CliError::Mismatch(_) => 3,
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(args) => cmd_gen(&args, out),
        Command::Query(args) => cmd_query(&args, out),
        Command::Bench(args) => cmd_bench(&args, out),
    }
}

fn write_failed(e: std::io::Error) -> CliError {
    CliError::Input(format!("write failed: {e}"))
}

pub fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.n == 0 || args.dims == 0 {
        return Err(CliError::Usage("--n and --dims must be at least 1".into()));
    }
    let points = gen_points(&GeneratorConfig {
        seed: args.seed,
        n: args.n,
        dims: args.dims,
        distribution: args.dist.0,
    })
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let dist = match args.dist.0 {
        Distribution::Uniform => "uniform".to_string(),
        Distribution::Grid(side) => format!("grid:{side}"),
    };
    let text = format!(
        "# n={} dims={} seed={} dist={}\n{}",
        args.n,
        args.dims,
        args.seed,
        dist,
        write_points(&points)
    );
    if args.out == "stdout" {
        out.write_all(text.as_bytes()).map_err(write_failed)
    } else {
        fs::write(&args.out, text).map_err(|e| CliError::Input(format!("{}: {e}", args.out)))
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn located(path: &Path, e: lrtree::Error) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

fn ids(points: &[&lrtree::Point]) -> Vec<usize> {
    points.iter().map(|p| p.id).collect()
}

pub fn cmd_query(args: &QueryArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.dims == 0 {
        return Err(CliError::Usage("--dims must be at least 1".into()));
    }
    let points = parse_points(&read(&args.points)?, args.dims).map_err(|e| located(&args.points, e))?;
    let boxes = parse_queries(&read(&args.queries)?, args.dims).map_err(|e| located(&args.queries, e))?;
    let tree = LayeredRangeTree::build(points).map_err(|e| CliError::Input(e.to_string()))?;

    let mut stats = QueryStats::default();
    let mut results = Vec::with_capacity(boxes.len());
    for (q, qbox) in boxes.iter().enumerate() {
        let result = if args.count_only {
            QueryResult::Count(tree.count(qbox, &mut stats).expect("dimensions checked"))
        } else {
            QueryResult::Points(tree.query(qbox, &mut stats).expect("dimensions checked"))
        };
        if args.check {
            let expected = brute_force_query(tree.points(), qbox).expect("dimensions checked");
            let ok = match &result {
                QueryResult::Points(found) => ids(found) == ids(&expected),
                QueryResult::Count(k) => *k == expected.len(),
            };
            if !ok {
                return Err(CliError::Mismatch(mismatch_message(q, &result, &ids(&expected))));
            }
        }
        results.push(result);
    }
    out.write_all(write_report(&results).as_bytes()).map_err(write_failed)
}

fn mismatch_message(q: usize, result: &QueryResult<'_>, expected: &[usize]) -> String {
    match result {
        QueryResult::Points(found) => {
            let found = ids(found);
            let only_tree: Vec<usize> = found.iter().filter(|id| !expected.contains(id)).copied().collect();
            let only_oracle: Vec<usize> = expected.iter().filter(|id| !found.contains(id)).copied().collect();
            format!("mismatch at query {q}: only in tree {only_tree:?}, only in oracle {only_oracle:?}")
        }
        QueryResult::Count(k) => {
            format!("mismatch at query {q}: tree counted {k}, oracle found {}", expected.len())
        }
    }
}

pub fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.dims == 0 || args.queries == 0 {
        return Err(CliError::Usage("--dims and --queries must be at least 1".into()));
    }
    if args.sizes.is_empty() || args.sizes.contains(&0) || !args.sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(CliError::Usage("--sizes must be positive and ascending".into()));
    }
    if !(args.selectivity > 0.0 && args.selectivity <= 1.0) {
        return Err(CliError::Usage("--selectivity must lie in (0, 1]".into()));
    }
    writeln!(out, "{}", bench::HEADER).map_err(write_failed)?;
    for &n in &args.sizes {
        let record = bench::run_one(args.dims, n, args.queries, args.seed, args.selectivity)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        writeln!(out, "{}", record.csv_row()).map_err(write_failed)?;
    }
    Ok(())
}
