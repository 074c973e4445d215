use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lacuna_cli::{resolve_workers, run, CliError, Command, RunConfig};
use lacuna_core::basis::DEFAULT_MAX_K;
use lacuna_core::kakeya::{Objective, DEFAULT_TRIALS};
use lacuna_core::maximal::default_p_grid;
use lacuna_core::{Rational, Scalar};

/// Analyze convex bases through their dyadic direction trees.
///
/// Exit status: 0 on success, 1 when a verified property fails, 2 on input
/// errors.
#[derive(Debug, Parser)]
#[command(name = "lacuna", version)]
struct Args {
    command: Command,
    /// Input JSON: generators for most commands, parallelograms for
    /// `measure`, a tree or Kakeya report for `render`.
    input: PathBuf,
    /// Report destination; stdout when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// SVG destination. A directory for `classify`.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Truncation depth; defaults to the input's `depth`.
    #[arg(long)]
    depth: Option<usize>,
    /// Comma-separated depths for `classify`.
    #[arg(long, value_delimiter = ',')]
    depths: Option<Vec<usize>>,
    /// Split value for `kakeya` and `maximal`.
    #[arg(long = "N", short = 'N')]
    n: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated exponents, e.g. `1,5/4,3/2,2`.
    #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
    p_grid: Option<Vec<Rational>>,
    #[arg(long, default_value_t = DEFAULT_MAX_K)]
    max_k: usize,
    #[arg(long, value_enum, default_value_t = ObjectiveArg::MaxRatio)]
    objective: ObjectiveArg,
    /// Worker threads; overrides LACUNA_WORKERS.
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Clone, Copy, Debug, clap::ValueEnum)]
enum ObjectiveArg {
    MaxRatio,
    MaxM1,
    MinM2,
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    Rational::parse_text(text).map_err(|e| e.to_string())
}

fn config(args: Args) -> Result<RunConfig, CliError> {
    Ok(RunConfig {
        command: args.command,
        input_path: args.input,
        output_path: args.output,
        svg_path: args.svg,
        depth: args.depth,
        depths: args.depths,
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        p_grid: args.p_grid.unwrap_or_else(default_p_grid),
        max_k: args.max_k,
        objective: match args.objective {
            ObjectiveArg::MaxRatio => Objective::MaxRatio,
            ObjectiveArg::MaxM1 => Objective::MaxM1,
            ObjectiveArg::MinM2 => Objective::MinM2,
        },
        worker_count: resolve_workers(args.workers)?,
    })
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = config(args).and_then(|c| run(&c).map(|a| (c, a)));
    match result {
        Ok((config, artifacts)) => {
            if config.output_path.is_none() {
                print!("{}", artifacts.output);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
