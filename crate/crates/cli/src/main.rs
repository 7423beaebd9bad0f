//! Command-line front end: scenario files in, outage-probability curves and
//! verification reports out.

mod commands;
mod error;
mod scenario;

use clap::{Parser, Subcommand};
use commands::{cmd_eval, cmd_sweep, cmd_verify, EvalFlags, SweepOptions, VerifyOptions};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "etamu-outage",
    version,
    about = "Outage probability for eta-mu interference-limited receivers",
    long_about = "Evaluates exact closed-form outage probabilities for receivers under \
                  eta-mu fading with cochannel interference, sweeps them against the \
                  average SIR, and cross-checks every value against a Monte Carlo \
                  sampler and a numerical contour inversion."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the outage probability at a single SIR point
    Eval {
        /// Scenario file (JSON)
        scenario: PathBuf,
        /// Average SIR in dB at which to evaluate
        #[arg(long, default_value_t = 0.0)]
        omega_db: f64,
        /// Residue-term budget for the closed form
        #[arg(long)]
        budget: Option<u64>,
        /// Report the contour-oracle value when the closed form is unstable
        /// or over budget
        #[arg(long)]
        contour_fallback: bool,
    },
    /// Sweep the SIR grid and emit CSV
    Sweep {
        /// Scenario file (JSON)
        scenario: PathBuf,
        /// Output CSV path (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Add Monte Carlo estimate columns
        #[arg(long)]
        with_mc: bool,
        /// Monte Carlo samples per grid point
        #[arg(long, default_value_t = 100_000)]
        mc_samples: u64,
        /// Monte Carlo seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residue-term budget for the closed form
        #[arg(long)]
        budget: Option<u64>,
        /// Report the contour-oracle value when the closed form is unstable
        /// or over budget
        #[arg(long)]
        contour_fallback: bool,
    },
    /// Cross-check the closed form against both oracles on the sweep grid
    Verify {
        /// Scenario file (JSON)
        scenario: PathBuf,
        /// Override the grid with this many evenly spaced dB points
        #[arg(long)]
        grid: Option<usize>,
        /// Monte Carlo samples per grid point
        #[arg(long, default_value_t = 1_000_000)]
        mc_samples: u64,
        /// Monte Carlo seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Residue-term budget for the closed form
        #[arg(long)]
        budget: Option<u64>,
        /// Negative-control hook: perturb the first pole rate by this
        /// relative amount before the closed-form evaluation only
        #[arg(long, hide = true)]
        corrupt_pole: Option<f64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval {
            scenario,
            omega_db,
            budget,
            contour_fallback,
        } => cmd_eval(
            &scenario,
            omega_db,
            EvalFlags {
                budget,
                contour_fallback,
                corrupt_pole: None,
            },
        ),
        Command::Sweep {
            scenario,
            out,
            with_mc,
            mc_samples,
            seed,
            budget,
            contour_fallback,
        } => cmd_sweep(
            &scenario,
            SweepOptions {
                out,
                with_mc,
                mc_samples,
                seed,
                flags: EvalFlags {
                    budget,
                    contour_fallback,
                    corrupt_pole: None,
                },
            },
        ),
        Command::Verify {
            scenario,
            grid,
            mc_samples,
            seed,
            budget,
            corrupt_pole,
        } => cmd_verify(
            &scenario,
            VerifyOptions {
                grid,
                mc_samples,
                seed,
                flags: EvalFlags {
                    budget,
                    contour_fallback: false,
                    corrupt_pole,
                },
            },
        ),
    };

    if let Err(e) = result {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
