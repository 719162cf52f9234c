//! Geometry self-checks of the foliation: slice exactness at the cone
//! boundary, the two-sided Jacobian envelope with a finite-difference cross
//! check, and forward/inverse round-trip consistency.

use crate::cutoffs;
use crate::error::Result;
use crate::foliation;

use super::CheckRecord;

/// Slice parameters the geometry battery samples.
pub const PROBE_SLICES: [f64; 4] = [2.0, 3.0, 5.0, 10.0];

/// Exactness of the glue point T(s, a) = (s^2+1)/2 and the flat-tail bounds
/// (s^2+1)/2 <= T(s) <= sqrt(s^4+6s^2+1)/2.
pub fn slice_exactness_check() -> Result<CheckRecord> {
    let mut worst = 0.0f64;
    let mut flat_ok = true;
    for &s in &PROBE_SLICES {
        let (a, b) = foliation::band(s)?;
        let glue = foliation::t_of(s, a)?;
        worst = worst.max((glue - 0.5 * (s * s + 1.0)).abs());
        let flat = foliation::t_of(s, b + 2.0)?;
        let lo = 0.5 * (s * s + 1.0);
        let hi = 0.5 * (s * s * s * s + 6.0 * s * s + 1.0).sqrt();
        if !(lo - 1e-9 <= flat && flat <= hi + 1e-9) {
            flat_ok = false;
        }
        // evenness at a generic point
        worst = worst.max((foliation::t_of(s, a + 0.4)? - foliation::t_of(s, -a - 0.4)?).abs());
    }
    Ok(CheckRecord::new(
        "geometry_slice_exactness",
        worst,
        1e-9,
        worst,
        worst <= 1e-9 && flat_ok,
        "glue-point value, evenness, and flat-tail bounds over probe slices".into(),
    ))
}

/// The slice-derivative envelope: exact in the hyperbolic range, two-sided
/// bounds in the band, (0, 2s] on the flat tail; cross-checked against
/// centered differences of T in s on a subsample.
pub fn jacobian_envelope_check(samples_per_slice: usize) -> Result<CheckRecord> {
    let mut worst_excess = 0.0f64;
    let mut worst_fd = 0.0f64;
    // h balances O(h^2) truncation (the band has large s-derivatives at
    // large s) against the 1e-12 quadrature noise in T
    let h = 1e-5;
    for &s in &PROBE_SLICES {
        let (a, b) = foliation::band(s)?;
        let x_max = b + 2.0;
        for k in 0..samples_per_slice {
            let x = x_max * (k as f64 + 0.5) / samples_per_slice as f64;
            let j = foliation::dt_ds(s, x)?;
            let hyp = s / (s * s + x * x).sqrt();
            let excess = if x <= a {
                (j - hyp).abs()
            } else if x < b {
                let xi = cutoffs::xi(s, x)?.value;
                let lo = (1.0 - xi) * s + xi * hyp;
                let hi = xi * hyp + 2.0 * (1.0 - xi) * s;
                (lo - j).max(j - hi).max(if j > 0.0 { 0.0 } else { 1.0 })
            } else {
                (j - 2.0 * s).max(if j > 0.0 { 0.0 } else { 1.0 })
            };
            worst_excess = worst_excess.max(excess);
            if k % 25 == 0 {
                // keep the centered stencil inside the s >= 2 domain
                let sc = s.max(2.0 + h);
                let jc = foliation::dt_ds(sc, x)?;
                let fd =
                    (foliation::t_of(sc + h, x)? - foliation::t_of(sc - h, x)?) / (2.0 * h);
                worst_fd = worst_fd.max((jc - fd).abs() / fd.abs().max(1e-30));
            }
        }
    }
    let pass = worst_excess <= 1e-9 && worst_fd <= 1e-6;
    Ok(CheckRecord::new(
        "geometry_jacobian_envelope",
        worst_excess,
        1e-9,
        worst_fd,
        pass,
        format!(
            "envelope excess {worst_excess:.2e}, relative FD mismatch {worst_fd:.2e} \
             over {samples_per_slice} samples per slice"
        ),
    ))
}

/// Round trip s -> T(s,x) -> s over a sweep covering all three regions.
pub fn inverse_consistency_check(n: usize) -> Result<CheckRecord> {
    let mut worst = 0.0f64;
    let per_slice = (n / PROBE_SLICES.len()).max(1);
    for &s in &PROBE_SLICES {
        let (_, b) = foliation::band(s)?;
        let x_max = b + 3.0;
        for k in 0..per_slice {
            let x = -x_max + 2.0 * x_max * (k as f64 + 0.5) / per_slice as f64;
            let t = foliation::t_of(s, x)?;
            let back = foliation::s_of(t, x)?;
            worst = worst.max((back - s).abs());
        }
    }
    Ok(CheckRecord::new(
        "geometry_inverse_consistency",
        worst,
        1e-8,
        worst,
        worst <= 1e-8,
        format!("max |s_of(T(s,x),x) - s| over ~{n} points"),
    ))
}

/// The full geometry battery at verify-pipeline sample counts.
pub fn geometry_suite() -> Result<Vec<CheckRecord>> {
    Ok(vec![
        slice_exactness_check()?,
        jacobian_envelope_check(2000)?,
        inverse_consistency_check(20_000)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometry_battery_passes() {
        for c in geometry_suite().unwrap() {
            assert!(c.pass, "{}: {}", c.id, c.detail);
        }
    }
}
