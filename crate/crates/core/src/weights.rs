//! Exterior weights concentrated outside the light cone and the spacelike
//! factor zeta that measures how far a slice is from being null.

use crate::cutoffs::{self, check_slice};
use crate::error::Result;

/// Weight w_gamma(t, x) = chi(r - t) (1 + r - t)^gamma with r = |x|.
/// Vanishes inside the cone r <= t and grows like |r - t|^gamma far outside.
pub fn w(gamma: f64, t: f64, x: f64) -> f64 {
    let q = x.abs() - t;
    if q <= 0.0 {
        return 0.0;
    }
    cutoffs::chi(q) * (1.0 + q).powf(gamma)
}

/// Derivative-weight w_bar_gamma(t, x) = chi'(r - t) (1 + r - t)^gamma,
/// supported on the shell 0 < r - t < 1.
pub fn w_bar(gamma: f64, t: f64, x: f64) -> f64 {
    let q = x.abs() - t;
    if q <= 0.0 || q >= 1.0 {
        return 0.0;
    }
    cutoffs::chi_prime(q) * (1.0 + q).powf(gamma)
}

/// Spatial derivative of w_gamma.
pub fn dw_dx(gamma: f64, t: f64, x: f64) -> f64 {
    let q = x.abs() - t;
    if q <= 0.0 {
        return 0.0;
    }
    let radial = w_bar(gamma, t, x) + gamma * w(gamma, t, x) / (1.0 + q);
    radial * x.signum()
}

/// Time derivative of w_gamma; the weight rides on r - t, so this is minus
/// the radial derivative.
pub fn dw_dt(gamma: f64, t: f64, x: f64) -> f64 {
    let q = x.abs() - t;
    if q <= 0.0 {
        return 0.0;
    }
    -(w_bar(gamma, t, x) + gamma * w(gamma, t, x) / (1.0 + q))
}

/// Spacelike factor of the slice:
///     zeta(s, x) = sqrt( (s^2 + (1 - xi_s^2) x^2) / (s^2 + x^2) ),
/// equal to s/t on the hyperbolic piece and to 1 on the flat tail.
pub fn zeta(s: f64, x: f64) -> Result<f64> {
    check_slice(s)?;
    let xi = cutoffs::profile().xi(s, x.abs())?.value;
    let x2 = x * x;
    Ok(((s * s + (1.0 - xi * xi) * x2) / (s * s + x2)).sqrt())
}
