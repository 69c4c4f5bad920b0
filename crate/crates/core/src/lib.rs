//! Dispersion interactions between two identical dipoles with Gaussian
//! polarization clouds of finite radius.
//!
//! The crate computes, in closed form and without any short-distance
//! divergence:
//!
//! * the ground-state (van der Waals) interaction of the pair, full and
//!   perturbatively truncated ([`potentials::cp_potential`],
//!   [`potentials::cp_potential_truncated`]),
//! * resonance interactions of an excited pair, branch by branch
//!   ([`potentials::resonance_potential`]),
//! * the dispersion self-energy of a single dipole
//!   ([`potentials::self_energy`]),
//! * the zero-point mode sum of the coupled point-dipole pair, including mode
//!   freeze-out at strong coupling ([`point_dipole::interaction_energy`]),
//! * an independent adaptive-quadrature route to the same potentials through
//!   the imaginary-frequency integral ([`quadrature::cp_by_quadrature`]),
//! * the inversion recovering oscillator parameters from published reference
//!   energies ([`species::invert_table_row`], [`species::reproduce_table`]).
//!
//! Everything internal is in Hartree atomic units; electronvolts and bohr are
//! accepted and produced only at the API boundary through the types in
//! [`units`].

pub mod erf;
pub mod error;
pub mod point_dipole;
pub mod potentials;
pub mod quadrature;
pub mod species;
pub mod tensor;
pub mod units;

pub use erf::erf;
pub use error::{Error, Result};
pub use point_dipole::{Mode, ModeSpectrum, OscillatorModel};
pub use potentials::{BranchBreakdown, BranchTerms, CouplingParameter, DipoleSpecies};
pub use quadrature::{QuadratureConfig, QuadratureResult};
pub use species::{CellCheck, InvertedParams, ReproductionReport, RowReport, TableRow};
pub use tensor::{Branch, TensorElement};
pub use units::{Energy, Length, Polarizability, HARTREE_EV};
