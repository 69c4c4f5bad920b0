//! Ground-state, resonance, and self-interaction energies of finite-size
//! dipole species.
//!
//! All of them are built from the same ingredients: the branch couplings
//! A_j = alpha0 T_jj(rho) with the Gaussian-cloud tensor elements of
//! [`crate::tensor`], and square roots of the shifted mode frequencies.
//! A negative radicand means the mode has been pushed to imaginary
//! frequency; it is dropped from the zero-point sum (the real part of the
//! root is zero), never complexified.
//!
//! ```text
//! ground state:  U(rho)    = (hbar w / 2) sum_j [ Re sqrt(1 + A_j) + Re sqrt(1 - A_j) - 2 ]
//! truncated:     U_t(rho)  = -(hbar w alpha0^2 / 8) sum_j T_jj^2
//! resonance:     U_j(rho)  = hbar w [ Re sqrt(1 + A_j) - 1 ]   (one branch, excited pair)
//! contact:       U(0)      = (3 hbar w / 2) [ Re sqrt(1 + 4g/3) + Re sqrt(1 - 4g/3) - 2 ]
//! self-energy:   U_S       = (3 hbar w / 2) [ sqrt(1 + 4g/3) - 1 ],   truncated: hbar w g
//! ```
//!
//! with the dimensionless coupling g = alpha0 / (sqrt(pi) a^3). Everything
//! stays finite down to contact; for 4g/3 > 1 one contact mode is frozen out
//! and the exact contact identity U(0) = U_S - (3/2) hbar w holds.

use crate::error::{Error, Result};
use crate::point_dipole::OscillatorModel;
use crate::tensor::{reduced_xx, reduced_zz, Branch};
use crate::units::{Energy, Length};

const SQRT_PI: f64 = 2.0 / std::f64::consts::FRAC_2_SQRT_PI;

/// Dimensionless coupling g = alpha0 / (sqrt(pi) a^3).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct CouplingParameter(pub f64);

impl CouplingParameter {
    /// The argument 4g/3 deciding whether a contact mode is frozen out.
    pub fn contact_argument(self) -> f64 {
        4.0 * self.0 / 3.0
    }
}

/// A dipole species: an oscillator plus the radius of its polarization cloud.
#[derive(Clone, Debug, PartialEq)]
pub struct DipoleSpecies {
    name: String,
    model: OscillatorModel,
    radius: Length,
}

impl DipoleSpecies {
    pub fn new(name: impl Into<String>, model: OscillatorModel, radius: Length) -> Result<Self> {
        if radius.bohr().is_nan() || radius.bohr() <= 0.0 {
            return Err(Error::OutOfRange {
                quantity: "cloud radius",
                requirement: "positive",
                value: radius.bohr(),
            });
        }
        let g = model.alpha0().bohr3() / (SQRT_PI * radius.bohr().powi(3));
        if !g.is_finite() {
            return Err(Error::NonFinite {
                quantity: "coupling g = alpha0/(sqrt(pi) a^3)",
                value: g,
            });
        }
        Ok(Self {
            name: name.into(),
            model,
            radius,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn model(&self) -> OscillatorModel {
        self.model
    }

    pub fn radius(&self) -> Length {
        self.radius
    }

    pub fn coupling(&self) -> CouplingParameter {
        CouplingParameter(self.model.alpha0().bohr3() / (SQRT_PI * self.radius.bohr().powi(3)))
    }

    /// Separation in cloud radii.
    pub fn separation_ratio(&self, rho: Length) -> f64 {
        rho.bohr() / self.radius.bohr()
    }

    /// Branch couplings (A_x = A_y, A_z) at separation ratio t.
    fn branch_couplings(&self, t: f64) -> (f64, f64) {
        let alpha_over_a3 = self.model.alpha0().bohr3() / self.radius.bohr().powi(3);
        (alpha_over_a3 * reduced_xx(t), alpha_over_a3 * reduced_zz(t))
    }
}

/// Re sqrt for a mode radicand: zero once the mode has gone imaginary.
fn re_sqrt(radicand: f64) -> f64 {
    if radicand >= 0.0 {
        radicand.sqrt()
    } else {
        0.0
    }
}

/// The two zero-point terms of one branch, as dimensionless shifts
/// Re sqrt(1 -+ A_j) - 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchTerms {
    /// Re sqrt(1 - A_j) - 1, the mode symmetric under dipole exchange.
    pub symmetric: f64,
    /// Re sqrt(1 + A_j) - 1, the antisymmetric mode.
    pub antisymmetric: f64,
    pub symmetric_dropped: bool,
    pub antisymmetric_dropped: bool,
}

impl BranchTerms {
    fn at(coupling: f64) -> Self {
        let symmetric_radicand = 1.0 - coupling;
        let antisymmetric_radicand = 1.0 + coupling;
        BranchTerms {
            symmetric: re_sqrt(symmetric_radicand) - 1.0,
            antisymmetric: re_sqrt(antisymmetric_radicand) - 1.0,
            symmetric_dropped: symmetric_radicand < 0.0,
            antisymmetric_dropped: antisymmetric_radicand < 0.0,
        }
    }

    fn sum(&self) -> f64 {
        self.symmetric + self.antisymmetric
    }
}

/// Per-branch decomposition of the ground-state potential.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BranchBreakdown {
    pub x: BranchTerms,
    pub y: BranchTerms,
    pub z: BranchTerms,
}

impl BranchBreakdown {
    /// Sum of all six dimensionless shift terms; the potential is
    /// (hbar w / 2) times this.
    pub fn term_sum(&self) -> f64 {
        self.x.sum() + self.y.sum() + self.z.sum()
    }

    pub fn any_dropped(&self) -> bool {
        [self.x, self.y, self.z]
            .iter()
            .any(|b| b.symmetric_dropped || b.antisymmetric_dropped)
    }
}

/// Ground-state (van der Waals) potential of the pair, with its per-branch
/// breakdown. Finite at every separation including rho = 0.
pub fn cp_potential(species: &DipoleSpecies, rho: Length) -> (Energy, BranchBreakdown) {
    let t = species.separation_ratio(rho);
    let (a_x, a_z) = species.branch_couplings(t);
    let x = BranchTerms::at(a_x);
    let breakdown = BranchBreakdown {
        x,
        y: x,
        z: BranchTerms::at(a_z),
    };
    let energy = Energy::new(0.5 * species.model.omega0().hartree() * breakdown.term_sum());
    (energy, breakdown)
}

/// Second-order truncation -(hbar w alpha0^2 / 8) sum_j T_jj^2 of the
/// ground-state potential.
pub fn cp_potential_truncated(species: &DipoleSpecies, rho: Length) -> Energy {
    let t = species.separation_ratio(rho);
    let (a_x, a_z) = species.branch_couplings(t);
    Energy::new(-species.model.omega0().hartree() / 8.0 * (2.0 * a_x * a_x + a_z * a_z))
}

/// Resonance interaction of the excited pair in one branch,
/// hbar w (Re sqrt(1 + A_j) - 1). Equals exactly -hbar w wherever the
/// branch mode is frozen out.
pub fn resonance_potential(species: &DipoleSpecies, rho: Length, branch: Branch) -> Energy {
    let t = species.separation_ratio(rho);
    let (a_x, a_z) = species.branch_couplings(t);
    let coupling = match branch {
        Branch::X | Branch::Y => a_x,
        Branch::Z => a_z,
    };
    Energy::new(species.model.omega0().hartree() * (re_sqrt(1.0 + coupling) - 1.0))
}

/// First-order resonance interaction, hbar w A_j / 2.
pub fn resonance_perturbative(species: &DipoleSpecies, rho: Length, branch: Branch) -> Energy {
    let t = species.separation_ratio(rho);
    let (a_x, a_z) = species.branch_couplings(t);
    let coupling = match branch {
        Branch::X | Branch::Y => a_x,
        Branch::Z => a_z,
    };
    Energy::new(0.5 * species.model.omega0().hartree() * coupling)
}

/// Ground-state potential at contact, where all three branches coincide:
/// (3 hbar w / 2) [ Re sqrt(1 + 4g/3) + Re sqrt(1 - 4g/3) - 2 ].
pub fn cp_contact(species: &DipoleSpecies) -> Energy {
    let ca = species.coupling().contact_argument();
    Energy::new(
        1.5 * species.model.omega0().hartree() * (re_sqrt(1.0 + ca) + re_sqrt(1.0 - ca) - 2.0),
    )
}

/// Dispersion self-energy (3 hbar w / 2) [ sqrt(1 + 4g/3) - 1 ] of a single
/// dressed dipole.
pub fn self_energy(species: &DipoleSpecies) -> Energy {
    let ca = species.coupling().contact_argument();
    Energy::new(1.5 * species.model.omega0().hartree() * ((1.0 + ca).sqrt() - 1.0))
}

/// Leading-order self-energy hbar w g.
pub fn self_energy_truncated(species: &DipoleSpecies) -> Energy {
    Energy::new(species.model.omega0().hartree() * species.coupling().0)
}
