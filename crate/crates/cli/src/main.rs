mod cache;
mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Overrides, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "divzeta", version, about = "Divisor error terms, critical-line zeta and mixed-moment exponents")]
struct Cli {
    /// Flat `key = value` config file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Pointwise exponent for Δ, as an exact rational.
    #[arg(long, global = true)]
    theta: Option<String>,
    /// Pointwise exponent for ζ: 32/205 or 53/342.
    #[arg(long, global = true)]
    zeta_exponent: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Derive exponent bounds for ∫ Δᵏ |ζ|^{2m}.
    Bounds(BoundsArgs),
    /// Build cached tables and grids.
    #[command(subcommand)]
    Compute(ComputeCommand),
    /// Integrate mixed moments from cached data and fit exponents.
    Moment(MomentArgs),
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    /// `table` for the theorem rows, `constants` for the fact database.
    #[arg(value_parser = ["table", "constants"])]
    what: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8), requires = "m", conflicts_with = "what")]
    k: Option<u32>,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3), requires = "k")]
    m: Option<u32>,
    /// Structured output instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
pub enum ComputeCommand {
    /// Sieve d(n) for n ≤ N.
    Delta {
        #[arg(long = "N")]
        n: Option<u64>,
    },
    /// Sample |ζ(½+it)|² on [t0, t1].
    Grid {
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        h: Option<f64>,
    },
    /// Print |ζ(½+it)| as CSV.
    Zeta {
        #[arg(long)]
        t0: f64,
        #[arg(long)]
        t1: Option<f64>,
        #[arg(long)]
        h: Option<f64>,
    },
}

#[derive(Args, Debug)]
pub struct MomentArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    m: u32,
    /// Comma-separated upper limits, e.g. 1e3,1e4,1e5.
    #[arg(long = "T", value_delimiter = ',', required = true)]
    t_values: Vec<f64>,
    #[arg(long)]
    h: Option<f64>,
    /// Where the CSV and JSON report go (defaults to the cache directory).
    #[arg(long)]
    out_dir: Option<PathBuf>,
}

fn run(cli: Cli) -> divzeta::Result<()> {
    let cfg = RunConfig::load(
        cli.config.as_deref(),
        Overrides { cache_dir: cli.cache_dir, threads: cli.threads, theta: cli.theta, zeta_exponent: cli.zeta_exponent },
    )?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| divzeta::Error::Resource(format!("cannot start worker pool: {e}")))?;
    pool.install(|| match cli.command {
        Command::Bounds(a) => commands::bounds(&a, &cfg),
        Command::Compute(c) => commands::compute(&c, &cfg),
        Command::Moment(a) => commands::moment(&a, &cfg),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Bounds(a) = &cli.command {
        if a.what.is_none() && a.k.is_none() {
            use clap::CommandFactory;
            Cli::command()
                .error(clap::error::ErrorKind::MissingRequiredArgument, "bounds needs --k and --m, or `table`")
                .exit();
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
