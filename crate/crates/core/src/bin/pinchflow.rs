use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use pinchflow::cli::{self, CliError, RunConfig};
use pinchflow::SpeedFamily;

#[derive(Parser)]
#[command(name = "pinchflow", version, about = "Curvature pinching checks and axisymmetric flow runs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Randomised Z, closed-form and reduction identity suites.
    VerifyIdentities(Flags),
    /// Certify the sign of Q1, Q2 for one family and exponent.
    QSign(Flags),
    /// Bisect for the largest admissible exponent.
    Threshold(Flags),
    /// Run one ellipsoid flow and write its trace.
    Flow(Flags),
    /// Flow runs over exponent and aspect-ratio lists.
    Sweep(Flags),
}

/// Command-line mirror of [`RunConfig`]; set flags override `--config`.
#[derive(Args)]
struct Flags {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_parser = parse_family)]
    family: Option<SpeedFamily>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["LO", "HI"])]
    alpha_range: Option<Vec<f64>>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long)]
    grid_size: Option<usize>,
    #[arg(long)]
    depth_limit: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    n_nodes: Option<usize>,
    #[arg(long)]
    safety: Option<f64>,
    #[arg(long)]
    stop_fraction: Option<f64>,
    #[arg(long)]
    record_stride: Option<usize>,
    #[arg(long)]
    max_steps: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    aspects: Option<Vec<f64>>,
    #[arg(long)]
    workers: Option<usize>,
}

fn parse_family(s: &str) -> Result<SpeedFamily, String> {
    s.parse().map_err(|e: pinchflow::SpeedError| e.to_string())
}

impl Flags {
    fn resolve(self) -> Result<RunConfig, CliError> {
        let base = match &self.config {
            Some(p) => RunConfig::from_json_file(p)?,
            None => RunConfig::default(),
        };
        let top = RunConfig {
            family: self.family,
            alpha: self.alpha,
            alpha_range: self.alpha_range.map(|v| [v[0], v[1]]),
            t_max: self.t_max,
            tolerance: self.tolerance,
            grid_size: self.grid_size,
            depth_limit: self.depth_limit,
            samples: self.samples,
            seed: self.seed,
            a: self.a,
            b: self.b,
            n_nodes: self.n_nodes,
            safety: self.safety,
            stop_fraction: self.stop_fraction,
            record_stride: self.record_stride,
            max_steps: self.max_steps,
            alphas: self.alphas,
            aspects: self.aspects,
            workers: self.workers,
            out: self.out,
        };
        Ok(base.overlay(top))
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (flags, cmd): (Flags, fn(&RunConfig) -> Result<cli::Outcome, CliError>) = match args.command {
        Command::VerifyIdentities(f) => (f, cli::cmd_verify_identities),
        Command::QSign(f) => (f, cli::cmd_q_sign),
        Command::Threshold(f) => (f, cli::cmd_threshold),
        Command::Flow(f) => (f, cli::cmd_flow),
        Command::Sweep(f) => (f, cli::cmd_sweep),
    };
    let result = flags.resolve().and_then(|cfg| cmd(&cfg));
    match result {
        Ok(out) => {
            for line in &out.lines {
                println!("{line}");
            }
            for f in &out.files {
                println!("wrote {}", f.display());
            }
            ExitCode::from(out.status.code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.status.code() as u8)
        }
    }
}
