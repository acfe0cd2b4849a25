//! `hshift` command-line front end.
//!
//! Boundary units: scattering lengths in pm, densities in cm⁻³, fields in
//! tesla, coefficients in cm³·G unless `--units` says otherwise. Exit codes:
//! 0 success, 1 computation error, 2 invalid flags or flag values.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use hshift::{CoefficientUnits, InteractionModel, Transition};
use output::Format;

#[derive(Debug, Parser)]
#[command(name = "hshift", version, about = "Hyperfine states, pair couplings and density shifts of ESR lines")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,

    /// Constants file overriding the hydrogen defaults (key = value lines).
    #[arg(long, global = true, value_name = "PATH")]
    constants: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(multiple = false)]
struct FieldArgs {
    /// Magnetic field in tesla.
    #[arg(long, allow_negative_numbers = true, value_name = "TESLA")]
    field: Option<f64>,

    /// Use the formal high-field limit (default).
    #[arg(long)]
    high_field: bool,
}

impl FieldArgs {
    fn field(&self) -> Option<f64> {
        if self.high_field {
            None
        } else {
            self.field
        }
    }
}

#[derive(Debug, Args)]
struct ScatteringArgs {
    /// Singlet scattering length (pm).
    #[arg(long = "as", allow_negative_numbers = true, value_name = "PM")]
    a_s: f64,

    /// Triplet scattering length (pm).
    #[arg(long = "at", allow_negative_numbers = true, value_name = "PM")]
    a_t: f64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Energies, amplitudes and mixing angle of the four hyperfine states.
    States {
        #[arg(long, allow_negative_numbers = true, value_name = "TESLA")]
        field: f64,
    },

    /// Expand a two-atom spin state in the electron/nuclear singlet-triplet basis.
    Decompose {
        /// Two state labels, e.g. `ac`.
        #[arg(long)]
        pair: String,

        #[arg(long, conflicts_with_all = ["antisymmetrize", "product"])]
        symmetrize: bool,

        #[arg(long, conflicts_with = "product")]
        antisymmetrize: bool,

        #[arg(long)]
        product: bool,

        #[command(flatten)]
        field: FieldArgs,
    },

    /// Clock shift of one transition at given densities.
    Shift {
        #[arg(long)]
        transition: Transition,

        #[arg(long, default_value = "sym")]
        model: InteractionModel,

        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_name = "CM-3")]
        na: f64,

        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_name = "CM-3")]
        nb: f64,

        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_name = "CM-3")]
        nc: f64,

        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_name = "CM-3")]
        nd: f64,

        #[command(flatten)]
        scattering: ScatteringArgs,

        #[command(flatten)]
        field: FieldArgs,
    },

    /// Scattering-length difference a_t - a_s from a measured shift coefficient.
    #[command(name = "extract-da")]
    ExtractDa {
        #[arg(long = "C", allow_negative_numbers = true, value_name = "VALUE")]
        c: f64,

        /// Unit convention of C and sigma: cm3-gauss or m3-tesla.
        #[arg(long)]
        units: CoefficientUnits,

        /// One-sigma uncertainty of C, same units.
        #[arg(long, value_name = "VALUE")]
        sigma: Option<f64>,
    },

    /// Weighted least-squares fit of shift coefficients from a measurement CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,

        #[arg(long)]
        transition: Transition,
    },

    /// Synthetic measurement CSV on a regular density grid.
    Synth {
        #[arg(long)]
        transition: Transition,

        /// Cross coefficient (cm³·G).
        #[arg(long = "C-cross", allow_negative_numbers = true, value_name = "CM3")]
        c_cross: f64,

        /// Self coefficient (cm³·G).
        #[arg(long = "C-self", default_value_t = 0.0, allow_negative_numbers = true, value_name = "CM3")]
        c_self: f64,

        /// Gaussian noise on ΔB (gauss).
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true, value_name = "GAUSS")]
        noise: f64,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Largest bath density (cm⁻³).
        #[arg(long, default_value_t = 1e16, value_name = "CM-3")]
        n_bath_max: f64,

        /// Largest self density (cm⁻³).
        #[arg(long, default_value_t = 5e15, value_name = "CM-3")]
        n_self_max: f64,

        /// Density levels per axis.
        #[arg(long, default_value_t = 10)]
        levels: usize,

        /// Output file; CSV goes to stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Shift of one transition under both interaction models.
    #[command(name = "compare-models")]
    CompareModels {
        #[arg(long)]
        transition: Transition,

        #[command(flatten)]
        scattering: ScatteringArgs,

        /// Bath density (cm⁻³).
        #[arg(long, default_value_t = 1e16, value_name = "CM-3")]
        n_bath: f64,

        /// Add per-pair couplings and each model's coefficient predictions.
        #[arg(long)]
        report: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(records) => {
            let stdout = std::io::stdout();
            match output::render(&records, cli.format, &mut stdout.lock()) {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
