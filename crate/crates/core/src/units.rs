//! Dimensioned wrappers and the single unit-conversion constant.
//!
//! Internally the whole crate works in Hartree atomic units (hbar = 1,
//! energies in hartree, lengths in bohr, polarizabilities in bohr^3).
//! Electronvolts exist only at the I/O boundary; [`HARTREE_EV`] below is the
//! one conversion factor in the crate.

use crate::error::{Error, Result};

/// Hartree energy in electronvolts (CODATA 2018).
pub const HARTREE_EV: f64 = 27.211_386_245_988;

fn check_finite(quantity: &'static str, value: f64) -> Result<()> {
    if value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonFinite { quantity, value })
    }
}

/// An energy, stored in hartree. May be negative (binding energies are).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Energy(f64);

impl Energy {
    pub const ZERO: Energy = Energy(0.0);

    pub fn from_hartree(value: f64) -> Result<Self> {
        check_finite("energy", value)?;
        Ok(Self(value))
    }

    pub fn from_ev(value: f64) -> Result<Self> {
        check_finite("energy", value)?;
        Ok(Self(value / HARTREE_EV))
    }

    pub fn hartree(self) -> f64 {
        self.0
    }

    pub fn ev(self) -> f64 {
        self.0 * HARTREE_EV
    }

    /// Internal constructor for values already known to be finite.
    pub(crate) fn new(value: f64) -> Self {
        debug_assert!(value.is_finite(), "internal energy went non-finite");
        Self(value)
    }
}

/// A length, stored in bohr. Zero is allowed (contact separation).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Length(f64);

impl Length {
    pub const ZERO: Length = Length(0.0);

    pub fn from_bohr(value: f64) -> Result<Self> {
        check_finite("length", value)?;
        if value < 0.0 {
            return Err(Error::OutOfRange {
                quantity: "length",
                requirement: "nonnegative",
                value,
            });
        }
        Ok(Self(value))
    }

    pub fn bohr(self) -> f64 {
        self.0
    }
}

/// A static polarizability, stored in bohr^3.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Polarizability(f64);

impl Polarizability {
    pub fn from_bohr3(value: f64) -> Result<Self> {
        check_finite("polarizability", value)?;
        if value < 0.0 {
            return Err(Error::OutOfRange {
                quantity: "polarizability",
                requirement: "nonnegative",
                value,
            });
        }
        Ok(Self(value))
    }

    pub fn bohr3(self) -> f64 {
        self.0
    }
}
