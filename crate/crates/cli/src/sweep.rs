//! Separation sweeps: evaluate one quantity for one species over a grid of
//! separations and emit a CSV block.

use gausdip::point_dipole::interaction_energy;
use gausdip::potentials::{cp_potential, cp_potential_truncated, resonance_potential, self_energy};
use gausdip::tensor::Branch;
use gausdip::units::Length;
use gausdip::DipoleSpecies;

use crate::output::{flag, sig12};
use crate::CliError;

/// Hard cap on sweep size; a million rows is already tens of MB of CSV.
pub const MAX_SWEEP_POINTS: usize = 1_000_000;

/// What gets evaluated at each separation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    /// Full ground-state pair potential, with per-branch breakdown columns.
    Cp,
    /// Second-order truncation of the ground-state potential.
    CpTruncated,
    /// Resonance interaction, excited dipole transverse to the pair axis.
    ResX,
    /// Resonance interaction, excited dipole along the pair axis.
    ResZ,
    /// Point-dipole mode-summation energy (requires rho > 0).
    PointModes,
    /// Dispersion self-energy; separation-independent, emitted per row for
    /// uniform plumbing.
    SelfEnergy,
}

impl Quantity {
    pub fn label(self) -> &'static str {
        match self {
            Quantity::Cp => "cp",
            Quantity::CpTruncated => "cp-truncated",
            Quantity::ResX => "res-x",
            Quantity::ResZ => "res-z",
            Quantity::PointModes => "point-modes",
            Quantity::SelfEnergy => "self-energy",
        }
    }
}

/// Grid spacing between `rho_min` and `rho_max`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// A sweep description; `validate` gates every numeric precondition.
#[derive(Clone, Debug)]
pub struct SweepRequest {
    pub species: DipoleSpecies,
    pub quantity: Quantity,
    /// Smallest separation, bohr.
    pub rho_min: f64,
    /// Largest separation, bohr.
    pub rho_max: f64,
    pub points: usize,
    pub spacing: Spacing,
}

impl SweepRequest {
    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.rho_min.is_finite() && self.rho_min >= 0.0) {
            return Err(CliError::Usage(format!(
                "--rho-min must be finite and >= 0, got {}",
                self.rho_min
            )));
        }
        if !(self.rho_max.is_finite() && self.rho_max > self.rho_min) {
            return Err(CliError::Usage(format!(
                "--rho-max must be finite and > --rho-min, got {}",
                self.rho_max
            )));
        }
        if self.rho_min == 0.0 && self.quantity == Quantity::PointModes {
            return Err(CliError::Usage(
                "--rho-min must be > 0 for point-modes (the point-dipole model diverges at \
                 contact)"
                    .to_string(),
            ));
        }
        if self.rho_min == 0.0 && self.spacing == Spacing::Log {
            return Err(CliError::Usage(
                "--rho-min must be > 0 for log spacing".to_string(),
            ));
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "--points must be >= 2, got {}",
                self.points
            )));
        }
        if self.points > MAX_SWEEP_POINTS {
            return Err(CliError::Usage(format!(
                "--points must be <= {MAX_SWEEP_POINTS}, got {}",
                self.points
            )));
        }
        Ok(())
    }

    /// Separation grid in bohr. Both endpoints are hit exactly.
    pub fn grid(&self) -> Vec<f64> {
        let n = self.points;
        let mut grid = Vec::with_capacity(n);
        match self.spacing {
            Spacing::Linear => {
                let step = (self.rho_max - self.rho_min) / (n - 1) as f64;
                for i in 0..n {
                    grid.push(self.rho_min + i as f64 * step);
                }
            }
            Spacing::Log => {
                let ln_min = self.rho_min.ln();
                let step = (self.rho_max.ln() - ln_min) / (n - 1) as f64;
                for i in 0..n {
                    grid.push((ln_min + i as f64 * step).exp());
                }
            }
        }
        grid[0] = self.rho_min;
        grid[n - 1] = self.rho_max;
        grid
    }

    /// Run the sweep: a header line plus one CSV line per grid point.
    pub fn run(&self) -> Result<String, CliError> {
        self.validate()?;
        let mut text = String::new();
        text.push_str(match self.quantity {
            Quantity::Cp => {
                "rho_bohr,t,U_eV,U_x_eV,U_y_eV,U_z_eV,dropped_sym_x,dropped_antisym_x,\
                 dropped_sym_y,dropped_antisym_y,dropped_sym_z,dropped_antisym_z\n"
            }
            _ => "rho_bohr,t,U_eV\n",
        });
        let half_omega0_ev = 0.5 * self.species.model().omega0().ev();
        for &rho_bohr in &self.grid() {
            let rho = Length::from_bohr(rho_bohr)?;
            let t = self.species.separation_ratio(rho);
            text.push_str(&sig12(rho_bohr));
            text.push(',');
            text.push_str(&sig12(t));
            text.push(',');
            match self.quantity {
                Quantity::Cp => {
                    let (energy, breakdown) = cp_potential(&self.species, rho);
                    text.push_str(&sig12(energy.ev()));
                    for branch in [breakdown.x, breakdown.y, breakdown.z] {
                        text.push(',');
                        let branch_energy =
                            half_omega0_ev * (branch.symmetric + branch.antisymmetric);
                        text.push_str(&sig12(branch_energy));
                    }
                    for branch in [breakdown.x, breakdown.y, breakdown.z] {
                        text.push(',');
                        text.push_str(flag(branch.symmetric_dropped));
                        text.push(',');
                        text.push_str(flag(branch.antisymmetric_dropped));
                    }
                }
                Quantity::CpTruncated => {
                    text.push_str(&sig12(cp_potential_truncated(&self.species, rho).ev()));
                }
                Quantity::ResX => {
                    text.push_str(&sig12(
                        resonance_potential(&self.species, rho, Branch::X).ev(),
                    ));
                }
                Quantity::ResZ => {
                    text.push_str(&sig12(
                        resonance_potential(&self.species, rho, Branch::Z).ev(),
                    ));
                }
                Quantity::PointModes => {
                    text.push_str(&sig12(interaction_energy(self.species.model(), rho)?.ev()));
                }
                Quantity::SelfEnergy => {
                    text.push_str(&sig12(self_energy(&self.species).ev()));
                }
            }
            text.push('\n');
        }
        Ok(text)
    }
}
