//! The combined foliation: for each slice parameter s >= 2 a spacelike curve
//! t = T(s, x) that follows the hyperbola t = sqrt(s^2 + x^2) for
//! |x| <= (s^2-1)/2, bends through a smooth transition band of width one, and
//! continues as a flat constant-time tail for |x| >= (s^2+1)/2.

use crate::cutoffs::{self, check_slice};
use crate::error::{Error, Result};
use crate::quad;

/// Which piece of the slice the point |x| falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Hyperbolic,
    Transition,
    Flat,
}

/// Inner and outer radius of the transition band of slice s.
pub fn band(s: f64) -> Result<(f64, f64)> {
    check_slice(s)?;
    let a = 0.5 * (s * s - 1.0);
    Ok((a, a + 1.0))
}

pub fn region(s: f64, x: f64) -> Result<Region> {
    let (a, b) = band(s)?;
    let r = x.abs();
    Ok(if r <= a {
        Region::Hyperbolic
    } else if r < b {
        Region::Transition
    } else {
        Region::Flat
    })
}

/// Height T(s, x) of slice s above the spatial point x.
pub fn t_of(s: f64, x: f64) -> Result<f64> {
    let (a, b) = band(s)?;
    let r = x.abs();
    if r <= a {
        return Ok((s * s + x * x).sqrt());
    }
    // dT/dr = xi_s(r) r / sqrt(s^2 + r^2) in the band, zero beyond it.
    let upper = r.min(b);
    let p = cutoffs::profile();
    let tail = quad::adaptive(
        |y| p.xi(s, y).expect("s checked").value * y / (s * s + y * y).sqrt(),
        a,
        upper,
        1e-12,
    );
    Ok(0.5 * (s * s + 1.0) + tail)
}

/// Spatial slope dT/dx = xi_s(|x|) x / sqrt(s^2 + x^2); valid on every piece.
pub fn dt_dx(s: f64, x: f64) -> Result<f64> {
    check_slice(s)?;
    let xi = cutoffs::profile().xi(s, x.abs())?;
    Ok(xi.value * x / (s * s + x * x).sqrt())
}

/// Slice speed dT/ds. Closed form
///     dT/ds = s xi_s(r) / sqrt(s^2 + r^2)
///             - s * integral over the band up to r of
///                   xi_s'(y) (1 + y) / sqrt(s^2 + y^2) dy,
/// which reduces to s / sqrt(s^2 + x^2) on the hyperbolic piece and to a
/// positive x-independent constant on the flat tail.
pub fn dt_ds(s: f64, x: f64) -> Result<f64> {
    let (a, b) = band(s)?;
    let r = x.abs();
    let p = cutoffs::profile();
    let local = p.xi(s, r)?.value * s / (s * s + r * r).sqrt();
    if r <= a {
        return Ok(local);
    }
    let upper = r.min(b);
    let integral = quad::adaptive(
        |y| p.xi(s, y).expect("s checked").d_dr * (1.0 + y) / (s * s + y * y).sqrt(),
        a,
        upper,
        1e-12,
    );
    Ok(local - s * integral)
}

/// Inverse of the foliation: the slice s through the spacetime point (t, x).
///
/// Closed form sqrt(t^2 - x^2) when the point sits over the hyperbolic piece
/// (t >= |x| + 1); otherwise a safeguarded Newton iteration on s -> T(s, x),
/// bracketed by [2, t]. Points below the initial slice are rejected.
pub fn s_of(t: f64, x: f64) -> Result<f64> {
    let t2 = t_of(2.0, x)?;
    if t < t2 - 1e-12 {
        return Err(Error::PointBelowFoliation { t, x });
    }
    if t >= x.abs() + 1.0 {
        return Ok((t * t - x * x).sqrt());
    }
    // T(s, x) is strictly increasing in s with T(2, x) <= t and T(t, x) >= t.
    let (mut lo, mut hi) = (2.0, t.max(2.0 + 1e-9));
    let mut s = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = t_of(s, x)? - t;
        if f.abs() < 1e-12 {
            break;
        }
        if f > 0.0 {
            hi = s;
        } else {
            lo = s;
        }
        let slope = dt_ds(s, x)?;
        let newton = s - f / slope;
        s = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo < 1e-14 * hi {
            break;
        }
    }
    Ok(s)
}

/// Future-pointing unit normal to the slice and the induced length element.
#[derive(Debug, Clone, Copy)]
pub struct Normal {
    pub n_t: f64,
    pub n_x: f64,
    /// sqrt(1 + (dT/dx)^2) dx is the Euclidean length element on the slice.
    pub volume: f64,
}

pub fn normal(s: f64, x: f64) -> Result<Normal> {
    let slope = dt_dx(s, x)?;
    let volume = (1.0 + slope * slope).sqrt();
    Ok(Normal {
        n_t: 1.0 / volume,
        n_x: -slope / volume,
        volume,
    })
}

/// Height of the slice above the light cone shifted by one: T(s, r) - r.
/// Equals exactly 1 at the inner band radius and lies in (0, 1) across the
/// band, so every slice stays above t = |x| + 1 until it flattens out.
pub fn lambda(s: f64, r: f64) -> Result<f64> {
    Ok(t_of(s, r)? - r)
}
