//! Crate-wide error type.

use crate::species::InvertedParams;

/// Anything that can go wrong across validation, quadrature, file ingestion,
/// and table inversion.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{quantity} must be finite, got {value}")]
    NonFinite { quantity: &'static str, value: f64 },

    #[error("{quantity} must be {requirement}, got {value}")]
    OutOfRange {
        quantity: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The adaptive integrator ran out of its evaluation budget before the
    /// error estimate met the tolerance. The best available estimate is
    /// carried along so callers can still report it.
    #[error(
        "quadrature stalled at error estimate {error_estimate:.3e} (target {tolerance:.3e}) \
         after {evaluations} integrand evaluations; partial value {partial:.12e}"
    )]
    QuadratureNoConvergence {
        partial: f64,
        error_estimate: f64,
        tolerance: f64,
        evaluations: u64,
    },

    #[error("cannot read input file: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed input data: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("record '{name}': field '{field}' must be {requirement}, got {value}")]
    InvalidField {
        name: String,
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },

    #[error("duplicate record name '{name}'")]
    DuplicateName { name: String },

    #[error("reference table must contain at least one row")]
    EmptyTable,

    #[error("no record named '{name}' (available: {available})")]
    UnknownName { name: String, available: String },

    /// The inversion identities assume the contact argument 4g/3 exceeds 1
    /// (one contact mode frozen out); the solved parameters land outside that
    /// regime.
    #[error(
        "row '{element}': solved coupling gives 4g/3 = {contact_argument}, \
         but the inversion identities require 4g/3 > 1"
    )]
    InversionRegime {
        element: String,
        contact_argument: f64,
    },

    /// Parameters were solvable but do not reproduce the row they came from.
    #[error(
        "row '{element}': inverted parameters (hbar w = {:.6} eV, g = {:.6}) fail to reproduce \
         the row: u_s_full residual {residual_u_s_full:+.3e}, u_cp_trunc0 residual \
         {residual_u_cp_trunc0:+.3e}, tolerance {tolerance:.1e}",
        .params.hbar_omega0.ev(),
        .params.coupling.0
    )]
    InversionResidual {
        element: String,
        params: InvertedParams,
        residual_u_s_full: f64,
        residual_u_cp_trunc0: f64,
        tolerance: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
