//! Null-structure checks for the quadratic interaction coefficients.
//!
//! In 1+1 dimensions a constant coefficient matrix N is null when it
//! annihilates both radial null covectors (1, 1) and (1, -1), i.e. when
//! N^{00} + N^{11} = 0 and N^{01} + N^{10} = 0. In the outgoing null frame
//! the frame component N~^{00} then vanishes identically on both half-lines,
//! and in the semi-hyperboloidal frame it is suppressed by (s/t)^2.

use crate::frames::{Frame, Mat2, MINKOWSKI};

use super::CheckRecord;

/// Whether N annihilates both radial null covectors.
pub fn is_null(n: &Mat2, tol: f64) -> bool {
    (n[0][0] + n[1][1]).abs() <= tol && (n[0][1] + n[1][0]).abs() <= tol
}

fn frame00(frame: &Frame, n: &Mat2) -> f64 {
    frame.to_frame(n)[0][0]
}

/// Max |Phi Psi - I| entry over a sweep of tilts drawn from all three frame
/// families.
pub fn frame_inverse_residual(samples: usize) -> f64 {
    let mut tilts = Vec::new();
    for k in 0..samples {
        let t = 2.0 + k as f64 * 0.37;
        let x = -10.0 + 20.0 * (k as f64 + 0.5) / samples as f64;
        tilts.push(x / t); // semi-hyperboloidal
        tilts.push(x.signum()); // null-adapted
        if let Ok(f) = Frame::slice_tangent(2.0 + (k % 7) as f64, x) {
            tilts.push(f.tilt);
        }
    }
    let mut worst = 0.0f64;
    for a in tilts {
        let f = Frame { tilt: a };
        let (p, q) = (f.phi(), f.psi());
        for i in 0..2 {
            for j in 0..2 {
                let mut e = 0.0;
                for k in 0..2 {
                    e += p[i][k] * q[k][j];
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((e - target).abs());
            }
        }
    }
    worst
}

/// Max |N~^{00}| in the outgoing null frame over both half-lines.
pub fn null_frame_suppression(n: &Mat2, samples: usize) -> f64 {
    let mut worst = 0.0f64;
    for k in 0..samples {
        let r = 0.1 + 15.0 * k as f64 / samples as f64;
        for &x in &[r, -r] {
            let f = Frame::null(x, 0.05).expect("away from axis");
            worst = worst.max(frame00(&f, n).abs());
        }
    }
    worst
}

/// Max |N_shf^{00}| / (s/t)^2 in the semi-hyperboloidal frame over interior
/// sample points of several hyperboloids.
pub fn interior_null_ratio(n: &Mat2, s_values: &[f64], samples: usize) -> f64 {
    let mut worst = 0.0f64;
    for &s in s_values {
        let a = 0.5 * (s * s - 1.0);
        for k in 0..=samples {
            let x = -a + 2.0 * a * k as f64 / samples as f64;
            let t = (s * s + x * x).sqrt();
            let f = Frame::semi_hyperboloidal(t, x);
            let suppression = (s / t) * (s / t);
            worst = worst.max(frame00(&f, n).abs() / suppression);
        }
    }
    worst
}

/// The full null-structure report for one coefficient matrix: frame-inverse
/// exactness, null-frame suppression (expected to fail for non-null N), the
/// metric's exact (s/t)^2 frame component, and the interior suppression
/// ratio.
pub fn null_structure_check(n: &Mat2) -> Vec<CheckRecord> {
    let mut out = Vec::new();
    let null = is_null(n, 1e-14);

    let inv = frame_inverse_residual(200);
    out.push(CheckRecord::new(
        "frame_inverse_identity",
        inv,
        1e-14,
        inv,
        inv <= 1e-14,
        "max |Phi Psi - I| over sampled tilts".into(),
    ));

    let sup = null_frame_suppression(n, 400);
    let sup_pass = if null { sup <= 1e-14 } else { sup > 1e-10 };
    out.push(CheckRecord::new(
        "null_frame_suppression",
        sup,
        1e-14,
        sup,
        sup_pass,
        if null {
            "null N: frame component N~00 vanishes on both half-lines".into()
        } else {
            "non-null N: suppression must visibly fail (negative control)".into()
        },
    ));

    let s_values = [2.0, 3.0, 5.0];
    let metric = {
        let mut worst = 0.0f64;
        for &s in &s_values {
            let a = 0.5 * (s * s - 1.0);
            for k in 0..=200 {
                let x = -a + 2.0 * a * k as f64 / 200.0;
                let t = (s * s + x * x).sqrt();
                let f = Frame::semi_hyperboloidal(t, x);
                worst = worst.max((frame00(&f, &MINKOWSKI) - (s / t) * (s / t)).abs());
            }
        }
        worst
    };
    out.push(CheckRecord::new(
        "metric_interior_component",
        metric,
        1e-13,
        metric,
        metric <= 1e-13,
        "semi-hyperboloidal m~00 equals (s/t)^2".into(),
    ));

    if null {
        let ratio = interior_null_ratio(n, &s_values, 400);
        let scale = n
            .iter()
            .flatten()
            .fold(0.0f64, |acc, &v| acc.max(v.abs()))
            .max(1e-30);
        out.push(CheckRecord::new(
            "interior_null_ratio",
            ratio,
            2.0 * scale,
            ratio,
            ratio.is_finite() && ratio <= 2.0 * scale + 1e-12,
            "interior |N_shf^00|/(s/t)^2 bounded by the coefficient size".into(),
        ));
    }
    out
}
