//! Adapted frames on 1+1 spacetime. Every frame here keeps the time leg
//! e_0 = d/dt and tilts the spatial leg, e_1 = a d/dt + d/dx, so the change
//! of basis is a unit lower-triangular 2x2 matrix determined by the single
//! tilt coefficient `a`.

use crate::cutoffs::check_slice;
use crate::error::{Error, Result};
use crate::foliation;

pub type Mat2 = [[f64; 2]; 2];

/// A frame (e_0, e_1) = (d_t, a d_t + d_x) with tilt coefficient `a`.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub tilt: f64,
}

fn matmul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(m: &Mat2) -> Mat2 {
    [[m[0][0], m[1][0]], [m[0][1], m[1][1]]]
}

impl Frame {
    /// Semi-hyperboloidal frame: spatial leg tangent to the hyperboloids,
    /// tilt x/t. Requires t > 0.
    pub fn semi_hyperboloidal(t: f64, x: f64) -> Frame {
        Frame { tilt: x / t }
    }

    /// Outgoing null-adapted frame: tilt sign(x). Undefined near the axis,
    /// where the outgoing direction flips.
    pub fn null(x: f64, r_min: f64) -> Result<Frame> {
        if x.abs() < r_min {
            return Err(Error::NullFrameAtOrigin { x, r_min });
        }
        Ok(Frame { tilt: x.signum() })
    }

    /// Frame whose spatial leg is tangent to the foliation slice s: tilt
    /// equals the slice slope dT/dx. Coincides with the semi-hyperboloidal
    /// frame on the hyperbolic piece and with the coordinate frame on the
    /// flat tail.
    pub fn slice_tangent(s: f64, x: f64) -> Result<Frame> {
        check_slice(s)?;
        Ok(Frame {
            tilt: foliation::dt_dx(s, x)?,
        })
    }

    /// Frame vectors as rows in the coordinate basis: [[1, 0], [a, 1]].
    pub fn phi(&self) -> Mat2 {
        [[1.0, 0.0], [self.tilt, 1.0]]
    }

    /// Inverse change of basis: phi with the tilt negated.
    pub fn psi(&self) -> Mat2 {
        [[1.0, 0.0], [-self.tilt, 1.0]]
    }

    /// Frame components of a contravariant 2-tensor: psi^T N psi, so that
    /// the 00-component contracts N against the coframe leg (1, -a).
    pub fn to_frame(&self, n: &Mat2) -> Mat2 {
        let psi = self.psi();
        matmul(&matmul(&transpose(&psi), n), &psi)
    }

    /// Coordinate components from frame components: phi^T N~ phi.
    pub fn from_frame(&self, n_frame: &Mat2) -> Mat2 {
        let phi = self.phi();
        matmul(&matmul(&transpose(&phi), n_frame), &phi)
    }

    /// Apply the tilted spatial leg to a field with gradient (ut, ux).
    pub fn spatial_derivative(&self, ut: f64, ux: f64) -> f64 {
        self.tilt * ut + ux
    }
}

/// Minkowski metric diag(1, -1) as a contravariant coefficient matrix.
pub const MINKOWSKI: Mat2 = [[1.0, 0.0], [0.0, -1.0]];

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn semi_hyperboloidal_metric_component() {
        // On the hyperboloid t = sqrt(s^2 + x^2) the frame 00-component of
        // the Minkowski coefficients collapses to (s/t)^2.
        let (s, x) = (2.0f64, 1.3f64);
        let t = (s * s + x * x).sqrt();
        let f = Frame::semi_hyperboloidal(t, x);
        let m = f.to_frame(&MINKOWSKI);
        assert_relative_eq!(m[0][0], (s / t) * (s / t), epsilon = 1e-14);
        // the spatial leg stays spacelike: 11-component keeps its sign
        assert_relative_eq!(m[1][1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn null_frame_kills_good_component() {
        // diag(1, -1) vanishes on null covectors, and the frame sees it:
        // the 00-component is 1 - sign(x)^2 * 1 = 0 on both sides.
        for &x in &[3.0, -3.0] {
            let f = Frame::null(x, 0.02).unwrap();
            let m = f.to_frame(&MINKOWSKI);
            assert_abs_diff_eq!(m[0][0], 0.0, epsilon = 1e-15);
        }
        assert!(matches!(
            Frame::null(0.01, 0.02),
            Err(Error::NullFrameAtOrigin { .. })
        ));
    }

    #[test]
    fn slice_tangent_limits() {
        // hyperbolic piece: same tilt as the semi-hyperboloidal frame
        let f = Frame::slice_tangent(2.0, 1.0).unwrap();
        let t = 5.0f64.sqrt();
        assert_relative_eq!(f.tilt, 1.0 / t, epsilon = 1e-13);
        // flat tail: coordinate frame
        let f = Frame::slice_tangent(2.0, 4.0).unwrap();
        assert_abs_diff_eq!(f.tilt, 0.0, epsilon = 1e-15);
        assert!(Frame::slice_tangent(1.0, 0.0).is_err());
    }

    #[test]
    fn spatial_derivative_combines_gradient() {
        let f = Frame { tilt: 0.5 };
        assert_relative_eq!(f.spatial_derivative(2.0, 3.0), 4.0);
    }

    proptest! {
        #[test]
        fn phi_psi_inverse(a in -5.0f64..5.0) {
            let f = Frame { tilt: a };
            let prod = matmul(&f.phi(), &f.psi());
            prop_assert!((prod[0][0] - 1.0).abs() < 1e-15);
            prop_assert!((prod[1][1] - 1.0).abs() < 1e-15);
            prop_assert!(prod[0][1].abs() < 1e-15);
            prop_assert!(prod[1][0].abs() < 1e-15);
        }

        #[test]
        fn tensor_round_trip(
            a in -3.0f64..3.0,
            n00 in -2.0f64..2.0, n01 in -2.0f64..2.0,
            n10 in -2.0f64..2.0, n11 in -2.0f64..2.0,
        ) {
            let f = Frame { tilt: a };
            let n = [[n00, n01], [n10, n11]];
            let back = f.from_frame(&f.to_frame(&n));
            for i in 0..2 {
                for j in 0..2 {
                    prop_assert!((back[i][j] - n[i][j]).abs() < 1e-10);
                }
            }
        }
    }
}
