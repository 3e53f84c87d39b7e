//! `lssg`: generate graphs and run the oracle experiments.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lssg_core::boruvka::{DEFAULT_C2, DEFAULT_C_ITER};
use lssg_core::generators::{gen_graph, Family};
use lssg_core::harness::{
    distinguishing_experiment, run_verification, scaling_study, write_csv, write_reports_csv, Algorithm, BfsStrategy,
    Params,
};
use lssg_core::{Error, Graph};

#[derive(Parser)]
#[command(name = "lssg", version, about = "Local sparse spanning graph oracles and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Query an oracle on every edge of a graph and check its contracts.
    Verify(VerifyArgs),
    /// Generate a graph and write it in the text format.
    Gen(GenArgs),
    /// Measure per-edge query counts across graph sizes.
    Scale(ScaleArgs),
    /// Run the plus/minus distinguishing experiment.
    Distinguish(DistinguishArgs),
}

#[derive(Args)]
struct OracleArgs {
    /// Oracle: centers, kruskal, reduction or boruvka.
    #[arg(long)]
    alg: Algorithm,
    /// Sparsity slack epsilon in (0,1].
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    /// Failure probability delta in (0,1).
    #[arg(long, default_value_t = 0.1)]
    delta: f64,
    /// Radius (centers, kruskal) or part-size bound (reduction); estimated when omitted.
    #[arg(long)]
    k: Option<usize>,
    /// Seeds as `a..b` (inclusive) or a comma list; defaults to LSSG_SEED.
    #[arg(long)]
    seeds: Option<String>,
    /// Default seed when --seeds is absent.
    #[arg(long, env = "LSSG_SEED", default_value_t = 0)]
    seed: u64,
    /// Boruvka level-count constant: ell = ceil(c_iter * ln(W/eps)).
    #[arg(long, default_value_t = DEFAULT_C_ITER)]
    c_iter: f64,
    /// Boruvka component-size constant.
    #[arg(long, default_value_t = DEFAULT_C2)]
    c2: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file in the text format.
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    oracle: OracleArgs,
    /// Permuted query orders for the consistency check (0 disables it).
    #[arg(long, default_value_t = 5)]
    permutations: usize,
    /// Let boruvka reuse components across queries.
    #[arg(long)]
    shared_cache: bool,
    /// CSV report path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Family such as `regular-n2000-d8`, `grid-20x20`, `path-n100`,
    /// `cycle-n100` or `weighted-grid-20x20-w10`.
    #[arg(long)]
    family: Family,
    #[arg(long, env = "LSSG_SEED", default_value_t = 0)]
    seed: u64,
    /// Output path; stdout when omitted.
    #[arg(long, visible_alias = "dump")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ScaleArgs {
    /// Family template; its size is replaced by each entry of --sizes.
    #[arg(long)]
    family: Family,
    /// Comma-separated vertex counts (at least three).
    #[arg(long, value_delimiter = ',', required = true)]
    sizes: Vec<usize>,
    #[command(flatten)]
    oracle: OracleArgs,
    /// Edges sampled per (size, seed); all edges when omitted.
    #[arg(long)]
    edges: Option<usize>,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistinguishArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 3)]
    d: usize,
    /// Query budget.
    #[arg(long)]
    r: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, env = "LSSG_SEED", default_value_t = 0)]
    seed: u64,
    /// CSV output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_seeds(spec: Option<&str>, default: u64) -> Result<Vec<u64>, Error> {
    let Some(spec) = spec else {
        return Ok(vec![default]);
    };
    let bad = || Error::Usage(format!("invalid seed list `{spec}`"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    if let Some((a, b)) = spec.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    spec.split(',').map(num).collect()
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn params(o: &OracleArgs, permutations: usize, shared_cache: bool) -> Params {
    Params {
        epsilon: o.eps,
        delta: o.delta,
        k: o.k,
        permutations,
        shared_cache,
        c_iter: o.c_iter,
        c2: o.c2,
    }
}

/// Returns whether every contract check passed.
fn run(cli: Cli) -> Result<bool, Error> {
    match cli.command {
        Command::Verify(a) => {
            let g = Graph::load(&a.graph).map_err(|e| match e {
                Error::Io(io) => Error::Usage(format!("cannot read {}: {io}", a.graph.display())),
                other => other,
            })?;
            let seeds = parse_seeds(a.oracle.seeds.as_deref(), a.oracle.seed)?;
            let p = params(&a.oracle, a.permutations, a.shared_cache);
            let name = a.graph.display().to_string();
            let reports = run_verification(&g, &name, a.oracle.alg, &p, &seeds)?;
            write_reports_csv(&reports, output(&a.out)?)?;
            let failed = reports.iter().filter(|r| !r.passes()).count();
            eprintln!("{} of {} runs passed", reports.len() - failed, reports.len());
            Ok(failed == 0)
        }
        Command::Gen(a) => {
            let g = gen_graph(a.family, a.seed)?;
            output(&a.out)?.write_all(g.to_text().as_bytes())?;
            Ok(true)
        }
        Command::Scale(a) => {
            let seeds = parse_seeds(a.oracle.seeds.as_deref(), a.oracle.seed)?;
            let p = params(&a.oracle, 0, false);
            let rep = scaling_study(a.family, &a.sizes, a.oracle.alg, &p, &seeds, a.edges)?;
            write_csv(&rep.rows, output(&a.out)?)?;
            eprintln!("slope {:.4} intercept {:.4} residuals {:?}", rep.slope, rep.intercept, rep.residuals);
            Ok(true)
        }
        Command::Distinguish(a) => {
            let rep = distinguishing_experiment(a.n, a.d, a.r, a.trials, a.seed, &BfsStrategy)?;
            write_csv(std::slice::from_ref(&rep), output(&a.out)?)?;
            Ok(rep.advantage <= 1.0 / 3.0 + rep.ci_half_width)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Usage(_) | Error::Parse { .. })) => {
            eprintln!("lssg: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("lssg: {e}");
            ExitCode::from(1)
        }
    }
}
