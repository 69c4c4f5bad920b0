use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use gausdip::species::{builtin_table, load_table, DEFAULT_CELL_TOLERANCE};
use gausdip_cli::commands::{cmd_invert, cmd_modes, cmd_oracle_check, cmd_self_energy, cmd_table};
use gausdip_cli::output::deliver;
use gausdip_cli::sweep::{Quantity, Spacing, SweepRequest};
use gausdip_cli::{available_species, find_species, CliError};

/// Dispersion interactions of two identical finite-size Gaussian dipoles.
#[derive(Parser)]
#[command(name = "gausdip", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    /// Full ground-state pair potential with branch breakdown.
    Cp,
    /// Second-order truncation of the ground-state potential.
    CpTruncated,
    /// Resonance interaction, transverse branch.
    ResX,
    /// Resonance interaction, longitudinal branch.
    ResZ,
    /// Point-dipole mode-summation energy.
    PointModes,
    /// Dispersion self-energy (separation-independent).
    SelfEnergy,
}

impl From<QuantityArg> for Quantity {
    fn from(arg: QuantityArg) -> Self {
        match arg {
            QuantityArg::Cp => Quantity::Cp,
            QuantityArg::CpTruncated => Quantity::CpTruncated,
            QuantityArg::ResX => Quantity::ResX,
            QuantityArg::ResZ => Quantity::ResZ,
            QuantityArg::PointModes => Quantity::PointModes,
            QuantityArg::SelfEnergy => Quantity::SelfEnergy,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one quantity over a separation grid, emitting CSV.
    Sweep {
        /// Species name (built-in: He, Ne, Ar, Kr; case-insensitive).
        #[arg(long)]
        species: String,
        /// JSON file with additional species definitions.
        #[arg(long, value_name = "PATH")]
        species_file: Option<PathBuf>,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        /// Smallest separation, bohr.
        #[arg(long)]
        rho_min: f64,
        /// Largest separation, bohr.
        #[arg(long)]
        rho_max: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Logarithmic grid spacing instead of linear.
        #[arg(long)]
        log: bool,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Recompute a reference table from inverted parameters and report
    /// per-cell deviations.
    Table {
        /// JSON table file; the built-in table when omitted.
        #[arg(long, value_name = "PATH")]
        table_file: Option<PathBuf>,
        /// Per-cell relative tolerance.
        #[arg(long, default_value_t = DEFAULT_CELL_TOLERANCE)]
        tolerance: f64,
    },
    /// Emit the point-dipole mode spectrum over a separation grid, as CSV.
    Modes {
        /// Species name (built-in: He, Ne, Ar, Kr; case-insensitive).
        #[arg(long)]
        species: String,
        /// JSON file with additional species definitions.
        #[arg(long, value_name = "PATH")]
        species_file: Option<PathBuf>,
        /// Smallest separation, bohr (must be positive).
        #[arg(long)]
        rho_min: f64,
        /// Largest separation, bohr.
        #[arg(long)]
        rho_max: f64,
        /// Number of grid points.
        #[arg(long, default_value_t = 200)]
        points: usize,
        /// Logarithmic grid spacing instead of linear.
        #[arg(long)]
        log: bool,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// List self-energies and contact potentials per species, as CSV.
    SelfEnergy {
        /// Restrict to one species; all available when omitted.
        #[arg(long)]
        species: Option<String>,
        /// JSON file with additional species definitions.
        #[arg(long, value_name = "PATH")]
        species_file: Option<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Cross-check the closed forms against adaptive quadrature.
    OracleCheck {
        /// Quadrature tolerance override for every integral.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Invert table rows to oscillator parameters, as CSV.
    Invert {
        /// JSON table file; the built-in table when omitted.
        #[arg(long, value_name = "PATH")]
        table_file: Option<PathBuf>,
        /// Output file; stdout when omitted.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("gausdip: {err}");
            std::process::exit(err.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sweep {
            species,
            species_file,
            quantity,
            rho_min,
            rho_max,
            points,
            log,
            out,
        } => {
            let list = available_species(species_file.as_deref())?;
            let request = SweepRequest {
                species: find_species(&list, &species)?,
                quantity: quantity.into(),
                rho_min,
                rho_max,
                points,
                spacing: if log { Spacing::Log } else { Spacing::Linear },
            };
            deliver(&request.run()?, out.as_deref())?;
            Ok(0)
        }
        Command::Table {
            table_file,
            tolerance,
        } => {
            let rows = match &table_file {
                Some(path) => load_table(path)?,
                None => builtin_table(),
            };
            let (text, pass) = cmd_table(&rows, tolerance)?;
            deliver(&text, None)?;
            Ok(if pass { 0 } else { 5 })
        }
        Command::Modes {
            species,
            species_file,
            rho_min,
            rho_max,
            points,
            log,
            out,
        } => {
            let list = available_species(species_file.as_deref())?;
            let species = find_species(&list, &species)?;
            let spacing = if log { Spacing::Log } else { Spacing::Linear };
            let text = cmd_modes(&species, rho_min, rho_max, points, spacing)?;
            deliver(&text, out.as_deref())?;
            Ok(0)
        }
        Command::SelfEnergy {
            species,
            species_file,
            out,
        } => {
            let list = available_species(species_file.as_deref())?;
            let text = cmd_self_energy(&list, species.as_deref())?;
            deliver(&text, out.as_deref())?;
            Ok(0)
        }
        Command::OracleCheck { tolerance } => {
            let (text, pass) = cmd_oracle_check(tolerance, None)?;
            deliver(&text, None)?;
            Ok(if pass { 0 } else { 4 })
        }
        Command::Invert { table_file, out } => {
            let rows = match &table_file {
                Some(path) => load_table(path)?,
                None => builtin_table(),
            };
            let (text, pass) = cmd_invert(&rows)?;
            deliver(&text, out.as_deref())?;
            Ok(if pass { 0 } else { 5 })
        }
    }
}
