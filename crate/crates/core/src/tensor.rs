//! Susceptibility tensor of a pair of Gaussian polarization clouds.
//!
//! Two identical clouds of radius `a` separated by `rho` along z couple
//! through a non-retarded tensor that is diagonal in (x, y, z), with the
//! transverse elements equal by symmetry:
//!
//! ```text
//! T_xx(rho) = -(1/(sqrt(pi) rho^3)) [ sqrt(pi) erf(t) - 2 t e^{-t^2} ]
//! T_zz(rho) = -(2/(sqrt(pi) rho^3)) [ -sqrt(pi) erf(t) + 2 t (1 + t^2) e^{-t^2} ]
//! ```
//!
//! with t = rho/a. Direct evaluation is hopeless at small t: both brackets
//! are O(t^3) leftovers of O(t) terms. Below [`T_SWITCH`] the brackets are
//! therefore summed as the power series obtained by integrating their exact
//! derivatives, 4 t^2 e^{-t^2} for the transverse bracket and
//! 2 t^2 (1 - 2 t^2) e^{-t^2} for the longitudinal one, term by term:
//!
//! ```text
//! a^3 T_xx = -(4/sqrt(pi)) sum_n (-1)^n t^{2n} / (n! (2n+3))
//! a^3 T_zz = -(4/sqrt(pi)) sum_n (-1)^n (2n+1) t^{2n} / (n! (2n+3))
//! ```
//!
//! Both elements reach the finite contact value -4/(3 sqrt(pi) a^3) at t = 0
//! and go over to the point-dipole forms -1/rho^3 and +2/rho^3 for t >> 1.
//! The longitudinal element changes sign once, near t = 0.968.

use crate::erf::erf_nonneg;
use crate::error::{Error, Result};
use crate::units::Length;

const SQRT_PI: f64 = 2.0 / std::f64::consts::FRAC_2_SQRT_PI;
const FOUR_OVER_SQRT_PI: f64 = 2.0 * std::f64::consts::FRAC_2_SQRT_PI;

/// Reduced contact value a^3 T_jj(0), the same for every branch.
pub const CONTACT_REDUCED: f64 = -2.0 / 3.0 * std::f64::consts::FRAC_2_SQRT_PI;

/// Crossover from series to direct bracket evaluation.
pub const T_SWITCH: f64 = 0.5;

/// Beyond this the Gaussian corrections are far below f64 resolution and the
/// point-dipole limit is used verbatim.
const POINT_LIMIT: f64 = 1e8;

/// Polarization branch label; x and y are equivalent by symmetry, z lies
/// along the interdipole axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    X,
    Y,
    Z,
}

impl Branch {
    pub const ALL: [Branch; 3] = [Branch::X, Branch::Y, Branch::Z];

    /// Lowercase label used in reports and CSV headers.
    pub fn label(self) -> &'static str {
        match self {
            Branch::X => "x",
            Branch::Y => "y",
            Branch::Z => "z",
        }
    }
}

/// One tensor element at a given separation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TensorElement {
    pub branch: Branch,
    /// Element value in bohr^-3.
    pub value: f64,
    /// Separation in units of the cloud radius, t = rho/a.
    pub t: f64,
}

/// Reduced transverse element a^3 T_xx as a function of t = rho/a.
pub fn reduced_xx(t: f64) -> f64 {
    if t < T_SWITCH {
        reduced_xx_series(t)
    } else {
        reduced_xx_direct(t)
    }
}

/// Reduced longitudinal element a^3 T_zz as a function of t = rho/a.
pub fn reduced_zz(t: f64) -> f64 {
    if t < T_SWITCH {
        reduced_zz_series(t)
    } else {
        reduced_zz_direct(t)
    }
}

/// Series route for the transverse element. Converges fast for t up to
/// about 1; the dispatcher uses it below [`T_SWITCH`]. Public so the two
/// routes can be compared against each other on the overlap window.
pub fn reduced_xx_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut power = 1.0_f64; // (-t^2)^n / n!
    let mut sum = 1.0 / 3.0;
    for n in 1..=60u32 {
        power *= -t2 / f64::from(n);
        let term = power / f64::from(2 * n + 3);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    -FOUR_OVER_SQRT_PI * sum
}

/// Series route for the longitudinal element, same window as
/// [`reduced_xx_series`].
pub fn reduced_zz_series(t: f64) -> f64 {
    let t2 = t * t;
    let mut power = 1.0_f64;
    let mut sum = 1.0 / 3.0;
    for n in 1..=60u32 {
        power *= -t2 / f64::from(n);
        let term = power * f64::from(2 * n + 1) / f64::from(2 * n + 3);
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    -FOUR_OVER_SQRT_PI * sum
}

/// Direct bracket route for the transverse element, numerically safe from
/// about t = 0.25 upward.
pub fn reduced_xx_direct(t: f64) -> f64 {
    if t > POINT_LIMIT {
        return -1.0 / (t * t * t);
    }
    let bracket = SQRT_PI * erf_nonneg(t) - 2.0 * t * (-t * t).exp();
    -bracket / (SQRT_PI * t * t * t)
}

/// Direct bracket route for the longitudinal element.
pub fn reduced_zz_direct(t: f64) -> f64 {
    if t > POINT_LIMIT {
        return 2.0 / (t * t * t);
    }
    let bracket = -SQRT_PI * erf_nonneg(t) + 2.0 * t * (1.0 + t * t) * (-t * t).exp();
    -2.0 * bracket / (SQRT_PI * t * t * t)
}

fn separation_ratio(rho: Length, a: Length) -> Result<f64> {
    if a.bohr().is_nan() || a.bohr() <= 0.0 {
        return Err(Error::OutOfRange {
            quantity: "cloud radius",
            requirement: "positive",
            value: a.bohr(),
        });
    }
    Ok(rho.bohr() / a.bohr())
}

fn inverse_radius_cubed(a: Length) -> Result<f64> {
    let a3 = a.bohr().powi(3);
    if !(a3 > 0.0 && a3.is_finite()) {
        return Err(Error::OutOfRange {
            quantity: "cloud radius",
            requirement: "positive and representable when cubed",
            value: a.bohr(),
        });
    }
    Ok(1.0 / a3)
}

/// Tensor element for an arbitrary branch at separation `rho` and cloud
/// radius `a`.
pub fn element(branch: Branch, rho: Length, a: Length) -> Result<TensorElement> {
    let t = separation_ratio(rho, a)?;
    let inv_a3 = inverse_radius_cubed(a)?;
    let reduced = match branch {
        Branch::X | Branch::Y => reduced_xx(t),
        Branch::Z => reduced_zz(t),
    };
    Ok(TensorElement {
        branch,
        value: reduced * inv_a3,
        t,
    })
}

/// Transverse element T_xx (= T_yy).
pub fn t_xx(rho: Length, a: Length) -> Result<TensorElement> {
    element(Branch::X, rho, a)
}

/// Longitudinal element T_zz.
pub fn t_zz(rho: Length, a: Length) -> Result<TensorElement> {
    element(Branch::Z, rho, a)
}

/// Contact (rho = 0) element, -4/(3 sqrt(pi) a^3) for every branch.
pub fn t_contact(branch: Branch, a: Length) -> Result<TensorElement> {
    let inv_a3 = inverse_radius_cubed(a)?;
    Ok(TensorElement {
        branch,
        value: CONTACT_REDUCED * inv_a3,
        t: 0.0,
    })
}
