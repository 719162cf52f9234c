//! Grid studies of the vector-field commutator identities and the Hessian
//! decomposition. Each identity is evaluated discretely on analytic test
//! fields; residuals must vanish at the time-limited rate O(h^2).
//!
//! Identities checked (L = x d_t + t d_x, d~_1 = sign(x) d_t + d_x):
//!
//! ```text
//! [d_t, d~_1] u = 0
//! [L, d~_1] u   = -(x/r) d~_1 u
//! [d_x, L] u    = d_t u
//! d_t d_x L u   = L d_t d_x u + d_x d_x u + d_t d_t u
//! (r - t) d_t d_t u = -t^2/(r+t) Box u + x/(r+t) (d_t L - d_x) u
//!                     + t/(r+t) (d_t - d_x L) u
//! ```

use crate::error::Result;
use crate::lattice::{Field2D, Grid};

use super::{fit_log_log, CheckRecord};

/// Sample an analytic function on a lattice with dt = h/2.
fn sample(h: f64, halfwidth: f64, t0: f64, t1: f64, f: impl Fn(f64, f64) -> f64) -> Field2D {
    let grid = Grid::symmetric(halfwidth, h);
    let dt = 0.5 * h;
    let nt = ((t1 - t0) / dt).round() as usize + 1;
    let levels: Vec<Vec<f64>> = (0..nt)
        .map(|l| {
            let t = t0 + l as f64 * dt;
            (0..grid.n).map(|i| f(t, grid.x(i))).collect()
        })
        .collect();
    Field2D::from_levels(grid, t0, dt, levels)
}

/// Tilted null derivative sign(x) d_t + d_x as a lattice field.
fn null_derivative(u: &Field2D) -> Result<Field2D> {
    let ft = u.dt_centered()?;
    let fx = u.dx5()?;
    let mut levels = Vec::with_capacity(u.nt);
    for l in 0..u.nt {
        let mut row = vec![0.0; u.grid.n];
        if l >= ft.l_lo && l <= ft.l_hi {
            for i in fx.i_lo..=fx.i_hi {
                let a = u.grid.x(i).signum();
                row[i] = a * ft.value(l, i) + fx.value(l, i);
            }
        }
        levels.push(row);
    }
    let mut out = Field2D::from_levels(u.grid, u.t0, u.dt, levels);
    out.l_lo = ft.l_lo;
    out.l_hi = ft.l_hi;
    out.i_lo = fx.i_lo;
    out.i_hi = fx.i_hi;
    Ok(out)
}

/// Max |a - b - c| over a fixed physical window away from the axis.
fn window_max(
    fields: &[&Field2D],
    combine: impl Fn(f64, f64, &[f64]) -> f64,
    x_min: f64,
) -> f64 {
    let f0 = fields[0];
    let l_lo = fields.iter().map(|f| f.l_lo).max().unwrap();
    let l_hi = fields.iter().map(|f| f.l_hi).min().unwrap();
    let i_lo = fields.iter().map(|f| f.i_lo).max().unwrap();
    let i_hi = fields.iter().map(|f| f.i_hi).min().unwrap();
    let mut worst = 0.0f64;
    let mut vals = vec![0.0; fields.len()];
    for l in l_lo..=l_hi {
        let t = f0.t_level(l);
        if !(1.3..=2.7).contains(&t) {
            continue;
        }
        for i in i_lo..=i_hi {
            let x = f0.grid.x(i);
            if x.abs() < x_min || x.abs() > 3.2 {
                continue;
            }
            for (k, f) in fields.iter().enumerate() {
                vals[k] = f.value(l, i);
            }
            worst = worst.max(combine(t, x, &vals).abs());
        }
    }
    worst
}

fn test_bump(t: f64, x: f64) -> f64 {
    (-0.4 * (x - 0.3 * t) * (x - 0.3 * t)).exp() * (0.8 * t + 0.2 * x).cos()
}

fn test_bump_t(t: f64, x: f64) -> f64 {
    let z = x - 0.3 * t;
    let w = 0.8 * t + 0.2 * x;
    (-0.4 * z * z).exp() * (0.24 * z * w.cos() - 0.8 * w.sin())
}

/// Residual of [d_t, d~_1] u = 0 on u = sin(x) cos(t). The stencils have
/// constant coefficients on each half-line, so this commutes to rounding.
fn dt_null_residual(h: f64) -> Result<f64> {
    let u = sample(h, 4.0, 1.0, 3.0, |t, x| x.sin() * t.cos());
    let a = null_derivative(&u)?.dt_centered()?;
    let b = null_derivative(&u.dt_centered()?)?;
    Ok(window_max(&[&a, &b], |_, _, v| v[0] - v[1], 0.6))
}

/// Residual of [L, d~_1] u + (x/r) d~_1 u = 0 on a bump, both half-lines.
fn l_null_residual(h: f64) -> Result<f64> {
    let u = sample(h, 4.0, 1.0, 3.0, test_bump);
    let d1 = null_derivative(&u)?;
    let a = d1.lorentz(None)?;
    let b = null_derivative(&u.lorentz(None)?)?;
    Ok(window_max(
        &[&a, &b, &d1],
        |_, x, v| v[0] - v[1] + x.signum() * v[2],
        0.6,
    ))
}

/// Residual of [d_x, L] u - d_t u = 0 on a bump, against the analytic time
/// derivative (the discrete one would cancel the leading error exactly).
fn x_l_residual(h: f64) -> Result<f64> {
    let u = sample(h, 4.0, 1.0, 3.0, test_bump);
    let a = u.lorentz(None)?.dx5()?;
    let b = u.dx5()?.lorentz(None)?;
    Ok(window_max(
        &[&a, &b],
        |t, x, v| v[0] - v[1] - test_bump_t(t, x),
        0.0,
    ))
}

/// Residual of the order-2 reordering d_t d_x L u = L d_t d_x u + d_x d_x u
/// + d_t d_t u.
fn reorder_residual(h: f64) -> Result<f64> {
    let u = sample(h, 4.0, 1.0, 3.0, test_bump);
    let a = u.lorentz(None)?.dx5()?.dt_centered()?;
    let b = u.dx5()?.dt_centered()?.lorentz(None)?;
    let uxx = u.dx5()?.dx5()?;
    let utt = u.dt_centered()?.dt_centered()?;
    Ok(window_max(
        &[&a, &b, &uxx, &utt],
        |_, _, v| v[0] - v[1] - v[2] - v[3],
        0.0,
    ))
}

/// Residual of the Hessian decomposition on an arbitrary field.
fn hessian_residual(h: f64, f: impl Fn(f64, f64) -> f64) -> Result<f64> {
    let u = sample(h, 4.0, 1.0, 3.0, f);
    let ut = u.dt_centered()?;
    let ux = u.dx5()?;
    let utt = ut.dt_centered()?;
    let uxx = ux.dx5()?;
    let lu = u.lorentz(None)?;
    let lt = lu.dt_centered()?;
    let lx = lu.dx5()?;
    Ok(window_max(
        &[&utt, &uxx, &lt, &lx, &ut, &ux],
        |t, x, v| {
            let r = x.abs();
            let boxed = v[0] - v[1];
            let lhs = (r - t) * v[0];
            let rhs = -t * t / (r + t) * boxed
                + x / (r + t) * (v[2] - v[5])
                + t / (r + t) * (v[4] - v[3]);
            lhs - rhs
        },
        0.0,
    ))
}

/// Fit the refinement slope of a residual and wrap it as a check.
fn slope_check(id: &str, dxs: &[f64], res: impl Fn(f64) -> Result<f64>) -> Result<CheckRecord> {
    let rs: Vec<f64> = dxs.iter().map(|&h| res(h)).collect::<Result<Vec<_>>>()?;
    let fit = fit_log_log(dxs, &rs)?;
    let pass = (fit.exponent - 2.0).abs() <= 0.3;
    Ok(CheckRecord::new(
        id,
        rs[0],
        rs[rs.len() - 1],
        fit.exponent,
        pass,
        format!("residual slope over dx {dxs:?}, stderr {:.2e}", fit.stderr),
    ))
}

/// The commutator identity battery over a refinement ladder of grid spacings.
pub fn commutator_suite(dxs: &[f64]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let exact = dt_null_residual(dxs[0])?;
    out.push(CheckRecord::new(
        "commutator_dt_null",
        exact,
        1e-12,
        exact,
        exact <= 1e-12,
        "constant-coefficient stencils commute to rounding".into(),
    ));
    out.push(slope_check("commutator_l_null", dxs, l_null_residual)?);
    out.push(slope_check("commutator_x_l", dxs, x_l_residual)?);
    out.push(slope_check("reorder_second_order", dxs, reorder_residual)?);
    Ok(out)
}

/// The Hessian decomposition battery: exact on quadratics, O(h^2) on generic
/// and outgoing fields.
pub fn hessian_identity_check(dxs: &[f64]) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let poly = hessian_residual(dxs[dxs.len() - 1], |t, x| t * t - x * x)?;
    out.push(CheckRecord::new(
        "hessian_quadratic_exact",
        poly,
        1e-9,
        poly,
        poly <= 1e-9,
        "every stencil is exact on t^2 - x^2".into(),
    ));
    out.push(slope_check("hessian_generic_bump", dxs, |h| {
        hessian_residual(h, test_bump)
    })?);
    out.push(slope_check("hessian_outgoing_wave", dxs, |h| {
        hessian_residual(h, |t, x| (-(x - t + 1.0) * (x - t + 1.0)).exp())
    })?);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dt_null_commutes_exactly() {
        assert!(dt_null_residual(0.05).unwrap() < 1e-12);
    }

    #[test]
    fn commutator_slopes_are_second_order() {
        let checks = commutator_suite(&[0.08, 0.04, 0.02]).unwrap();
        for c in &checks {
            assert!(c.pass, "{}: value {} detail {}", c.id, c.value, c.detail);
        }
    }

    #[test]
    fn hessian_checks_pass() {
        let checks = hessian_identity_check(&[0.08, 0.04, 0.02]).unwrap();
        for c in &checks {
            assert!(c.pass, "{}: value {} detail {}", c.id, c.value, c.detail);
        }
    }

    #[test]
    fn hessian_quadratic_is_machine_exact() {
        let r = hessian_residual(0.04, |t, x| t * t - x * x).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }
}
