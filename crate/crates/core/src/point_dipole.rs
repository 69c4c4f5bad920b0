//! Zero-point mode sum of two coupled point dipoles.
//!
//! Coupling two identical oscillators (static polarizability alpha0, bare
//! frequency omega0) through the vacuum dipole tensor splits the six modes of
//! the pair into four distinct squared frequencies,
//!
//! ```text
//! omega^2 / omega0^2 = 1 + u   (x2)      1 - u   (x2)
//!                      1 + 2u  (x1)      1 - 2u  (x1),      u = alpha0 / rho^3
//! ```
//!
//! and the interaction energy is the shift of the zero-point sum, counting
//! only modes with real frequency:
//!
//! ```text
//! U(rho) = (hbar omega0 / 2) [ sum_{real k} m_k sqrt(omega^2_k / omega0^2) - 6 ]
//! ```
//!
//! The softening modes freeze out at u = 1/2 (longitudinal) and u = 1
//! (transverse); a mode at exactly zero frequency counts as real and
//! contributes nothing, so the sum is continuous across both thresholds.
//! For u >> 1 only the three hardening modes survive and the energy turns
//! repulsive, growing as (hbar omega0/2) (2 + sqrt 2) sqrt(u); for u << 1 it
//! reproduces the London form -(3/4) hbar omega0 alpha0^2 / rho^6.

use crate::error::{Error, Result};
use crate::units::{Energy, Length, Polarizability};

/// A single dipole modeled as one isotropic oscillator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OscillatorModel {
    alpha0: Polarizability,
    omega0: Energy,
}

impl OscillatorModel {
    /// Requires a positive resonance energy; zero polarizability is allowed
    /// (a dipole that couples to nothing).
    pub fn new(alpha0: Polarizability, omega0: Energy) -> Result<Self> {
        if omega0.hartree().is_nan() || omega0.hartree() <= 0.0 {
            return Err(Error::OutOfRange {
                quantity: "oscillator energy",
                requirement: "positive",
                value: omega0.hartree(),
            });
        }
        Ok(Self { alpha0, omega0 })
    }

    pub fn alpha0(self) -> Polarizability {
        self.alpha0
    }

    pub fn omega0(self) -> Energy {
        self.omega0
    }
}

/// One of the four distinct pair modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mode {
    /// omega^2 / omega0^2 for this mode; negative once frozen out.
    pub frequency_squared_factor: f64,
    pub multiplicity: u32,
    /// Whether the squared frequency is nonnegative, i.e. the mode still
    /// oscillates and belongs in the zero-point sum.
    pub is_real: bool,
}

/// The full mode set of the pair at one separation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeSpectrum {
    pub modes: [Mode; 4],
    /// Coupling strength u = alpha0 / rho^3 the spectrum was built at.
    pub u: f64,
}

impl ModeSpectrum {
    /// Number of real modes counted with multiplicity: 6, then 5 past
    /// u = 1/2, then 3 past u = 1.
    pub fn real_mode_count(&self) -> u32 {
        self.modes
            .iter()
            .filter(|m| m.is_real)
            .map(|m| m.multiplicity)
            .sum()
    }

    /// sum of m_k sqrt(omega^2_k / omega0^2) over the real modes.
    pub fn zero_point_sum(&self) -> f64 {
        self.modes
            .iter()
            .filter(|m| m.is_real)
            .map(|m| f64::from(m.multiplicity) * m.frequency_squared_factor.sqrt())
            .sum()
    }
}

fn coupling_strength(model: OscillatorModel, rho: Length) -> Result<f64> {
    if rho.bohr().is_nan() || rho.bohr() <= 0.0 {
        return Err(Error::OutOfRange {
            quantity: "separation",
            requirement: "positive for the point-dipole model",
            value: rho.bohr(),
        });
    }
    let u = model.alpha0.bohr3() / (rho.bohr() * rho.bohr() * rho.bohr());
    if !u.is_finite() {
        return Err(Error::NonFinite {
            quantity: "mode coupling u = alpha0/rho^3",
            value: u,
        });
    }
    Ok(u)
}

/// Mode factors, multiplicities, and reality flags at separation `rho`.
pub fn mode_spectrum(model: OscillatorModel, rho: Length) -> Result<ModeSpectrum> {
    let u = coupling_strength(model, rho)?;
    let factors = [
        (1.0 + u, 2),
        (1.0 - u, 2),
        (1.0 + 2.0 * u, 1),
        (1.0 - 2.0 * u, 1),
    ];
    let modes = factors.map(|(factor, multiplicity)| Mode {
        frequency_squared_factor: factor,
        multiplicity,
        is_real: factor >= 0.0,
    });
    Ok(ModeSpectrum { modes, u })
}

/// Zero-point interaction energy of the pair, real modes only.
pub fn interaction_energy(model: OscillatorModel, rho: Length) -> Result<Energy> {
    let spectrum = mode_spectrum(model, rho)?;
    Ok(Energy::new(
        0.5 * model.omega0.hartree() * (spectrum.zero_point_sum() - 6.0),
    ))
}

/// Weak-coupling limit -(3/4) hbar omega0 alpha0^2 / rho^6.
pub fn london_asymptote(model: OscillatorModel, rho: Length) -> Result<Energy> {
    let u = coupling_strength(model, rho)?;
    Ok(Energy::new(-0.75 * model.omega0.hartree() * u * u))
}

/// Strong-coupling limit (hbar omega0 / 2) [(2 + sqrt 2) sqrt(u) - 6] of the
/// three surviving hardening modes.
pub fn repulsive_asymptote(model: OscillatorModel, rho: Length) -> Result<Energy> {
    let u = coupling_strength(model, rho)?;
    Ok(Energy::new(
        0.5 * model.omega0.hartree() * ((2.0 + std::f64::consts::SQRT_2) * u.sqrt() - 6.0),
    ))
}
