//! `rectmap` binary: tile, sweep, and check subcommands.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rectmap_cli::{parse_levels, parse_seed_point, CliError, EmitSet, Mode, RunConfig};

#[derive(Parser)]
#[command(
    name = "rectmap",
    version,
    about = "Approximate the rectangle map of a marked Jordan domain by square tilings",
    after_help = "Exit codes: 0 success, 2 validation error, 3 solver error, 4 IO error.\n\
                  Errors are reported as single-line JSON records on stderr."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Domain JSON file: closed boundary polyline plus four marks.
    #[arg(long)]
    domain: PathBuf,
    /// Harmonic solver tolerance, in (0, 1e-2].
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Interior seed point "X,Y"; defaults to the domain file's seed,
    /// the centroid, or a grid scan.
    #[arg(long, value_name = "X,Y")]
    seed_point: Option<String>,
}

#[derive(Args)]
struct OutputArgs {
    /// Output directory for artifacts.
    #[arg(long, default_value = "out", value_name = "DIR")]
    out: PathBuf,
    /// Artifacts to write: comma list of tiling_svg, map_svg, tiling_json,
    /// map_csv, report — or "all".
    #[arg(long, default_value = "all", value_name = "LIST")]
    emit: String,
    /// Sampling grid density for map figures and the map CSV.
    #[arg(long, default_value_t = 96)]
    samples: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single level and write its artifacts.
    Tile {
        #[command(flatten)]
        common: CommonArgs,
        /// Mesh level n (lattice spacing 2^-n).
        #[arg(long)]
        level: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run a range of levels and write artifacts plus the convergence report.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Inclusive level range "A..B" (or a single level "N").
        #[arg(long, value_name = "A..B")]
        levels: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Validate tilings and duality; optionally cross-check against
    /// Monte Carlo hitting probabilities. Writes nothing.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        /// Inclusive level range "A..B" (or a single level "N").
        #[arg(long, value_name = "A..B")]
        levels: String,
        /// Random walks per sampled vertex for the Monte Carlo cross-check.
        #[arg(long, value_name = "N")]
        mc_walks: Option<usize>,
        /// Seed for the Monte Carlo walk streams.
        #[arg(long, default_value_t = 1, value_name = "S")]
        mc_seed: u64,
    },
}

fn build_config(cli: Cli) -> Result<RunConfig, CliError> {
    let (mode, common, levels, output, mc) = match cli.command {
        Command::Tile {
            common,
            level,
            output,
        } => (Mode::Tile, common, vec![level], Some(output), None),
        Command::Sweep {
            common,
            levels,
            output,
        } => (Mode::Sweep, common, parse_levels(&levels)?, Some(output), None),
        Command::Check {
            common,
            levels,
            mc_walks,
            mc_seed,
        } => (
            Mode::Check,
            common,
            parse_levels(&levels)?,
            None,
            Some((mc_walks, mc_seed)),
        ),
    };
    let mut cfg = RunConfig::new(mode, common.domain, levels);
    cfg.tol = common.tol;
    if let Some(text) = common.seed_point {
        cfg.seed_point = Some(parse_seed_point(&text)?);
    }
    if let Some(output) = output {
        cfg.out_dir = output.out;
        cfg.emit = EmitSet::parse(&output.emit)?;
        cfg.samples = output.samples;
    }
    if let Some((walks, seed)) = mc {
        cfg.mc_walks = walks;
        cfg.mc_seed = seed;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = build_config(cli).and_then(|cfg| rectmap_cli::run(&cfg));
    match outcome {
        Ok(summary) => {
            for note in &summary.notes {
                println!("{note}");
            }
            for path in &summary.artifacts {
                println!("wrote {}", path.display());
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("{}", err.record_line());
            ExitCode::from(err.code() as u8)
        }
    }
}
