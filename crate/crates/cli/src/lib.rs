//! Command-line front end for the `gausdip` library: separation sweeps,
//! reference-table reproduction, mode inspection, parameter inversion, and
//! closed-form-vs-quadrature self-checks, all with deterministic output for
//! downstream plotting and diffing.

pub mod commands;
pub mod output;
pub mod sweep;

use std::fmt;
use std::path::Path;

use gausdip::species::{builtin_table, load_species, solve_table_row};
use gausdip::DipoleSpecies;

/// Process failure classes. The exit-code mapping is a stable contract:
/// 0 success, 2 usage, 3 I/O, 4 numerical, 5 reproduction failure.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Numerical(String),
    Reproduction(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Numerical(_) => 4,
            CliError::Reproduction(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg)
            | CliError::Io(msg)
            | CliError::Numerical(msg)
            | CliError::Reproduction(msg) => f.write_str(msg),
        }
    }
}

impl From<gausdip::Error> for CliError {
    fn from(err: gausdip::Error) -> Self {
        match &err {
            gausdip::Error::Io(_) => CliError::Io(err.to_string()),
            gausdip::Error::QuadratureNoConvergence { .. } => CliError::Numerical(err.to_string()),
            gausdip::Error::InversionRegime { .. } | gausdip::Error::InversionResidual { .. } => {
                CliError::Reproduction(err.to_string())
            }
            // Everything else is a malformed input of some kind.
            _ => CliError::Usage(err.to_string()),
        }
    }
}

/// Species derived from the built-in reference table, in table order.
pub fn builtin_species() -> Vec<DipoleSpecies> {
    builtin_table()
        .iter()
        .map(|table_row| {
            solve_table_row(table_row)
                .expect("built-in rows are in the strong-coupling regime")
                .to_species(table_row.element())
        })
        .collect()
}

/// Species visible to a command: the built-ins, with `species_file` entries
/// layered on top (a file entry with a built-in name shadows it).
pub fn available_species(species_file: Option<&Path>) -> Result<Vec<DipoleSpecies>, CliError> {
    let mut list = builtin_species();
    if let Some(path) = species_file {
        for species in load_species(path)? {
            match list
                .iter_mut()
                .find(|s| s.name().eq_ignore_ascii_case(species.name()))
            {
                Some(slot) => *slot = species,
                None => list.push(species),
            }
        }
    }
    Ok(list)
}

/// Case-insensitive lookup, listing what is available on failure.
pub fn find_species(list: &[DipoleSpecies], name: &str) -> Result<DipoleSpecies, CliError> {
    list.iter()
        .find(|s| s.name().eq_ignore_ascii_case(name))
        .cloned()
        .ok_or_else(|| {
            let available: Vec<&str> = list.iter().map(DipoleSpecies::name).collect();
            CliError::Usage(format!(
                "unknown species '{name}'; available: {}",
                available.join(", ")
            ))
        })
}
