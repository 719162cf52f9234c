//! Uniform space-time lattices of field values and the discrete operators
//! acting on them: centered differences in t and x, the scaling-boost field
//! L = x d_t + t d_x, bicubic sampling at off-grid points, and the family of
//! composite operators d^I L^j used by the high-order energies.
//!
//! Time differences are deliberately second order (3-point centered) while
//! space uses a fourth-order 5-point stencil: grid studies of the operator
//! identities then converge at the time-limited rate 2.

use crate::error::{Error, Result};

/// Uniform spatial grid x_i = x0 + i dx, i = 0..n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub x0: f64,
    pub dx: f64,
    pub n: usize,
}

impl Grid {
    pub fn symmetric(halfwidth: f64, dx: f64) -> Grid {
        let m = (halfwidth / dx).round() as usize;
        Grid {
            x0: -(m as f64) * dx,
            dx,
            n: 2 * m + 1,
        }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.x0 + i as f64 * self.dx
    }

    /// Index of the nearest grid point at or left of x.
    pub fn floor_index(&self, x: f64) -> isize {
        ((x - self.x0) / self.dx).floor() as isize
    }
}

/// One scalar field stored on a block of uniformly spaced time levels.
///
/// `l_lo..=l_hi` and `i_lo..=i_hi` delimit where the values are trustworthy;
/// every stencil application shrinks these margins instead of copying data.
#[derive(Debug, Clone)]
pub struct Field2D {
    pub grid: Grid,
    pub t0: f64,
    pub dt: f64,
    pub nt: usize,
    data: Vec<f64>,
    pub l_lo: usize,
    pub l_hi: usize,
    pub i_lo: usize,
    pub i_hi: usize,
}

impl Field2D {
    pub fn from_levels(grid: Grid, t0: f64, dt: f64, levels: Vec<Vec<f64>>) -> Field2D {
        let nt = levels.len();
        let mut data = Vec::with_capacity(nt * grid.n);
        for level in &levels {
            assert_eq!(level.len(), grid.n);
            data.extend_from_slice(level);
        }
        Field2D {
            grid,
            t0,
            dt,
            nt,
            data,
            l_lo: 0,
            l_hi: nt.saturating_sub(1),
            i_lo: 0,
            i_hi: grid.n.saturating_sub(1),
        }
    }

    fn like(&self) -> Field2D {
        Field2D {
            grid: self.grid,
            t0: self.t0,
            dt: self.dt,
            nt: self.nt,
            data: vec![0.0; self.nt * self.grid.n],
            l_lo: self.l_lo,
            l_hi: self.l_hi,
            i_lo: self.i_lo,
            i_hi: self.i_hi,
        }
    }

    #[inline]
    pub fn value(&self, l: usize, i: usize) -> f64 {
        self.data[l * self.grid.n + i]
    }

    #[inline]
    fn set(&mut self, l: usize, i: usize, v: f64) {
        self.data[l * self.grid.n + i] = v;
    }

    pub fn t_level(&self, l: usize) -> f64 {
        self.t0 + l as f64 * self.dt
    }

    /// Trustworthy time span [t_lo, t_hi].
    pub fn t_span(&self) -> (f64, f64) {
        (self.t_level(self.l_lo), self.t_level(self.l_hi))
    }

    fn check_levels(&self, need: usize) -> Result<()> {
        let have = self.l_hi + 1 - self.l_lo;
        if have < need {
            return Err(Error::InsufficientWindow { have, need });
        }
        Ok(())
    }

    /// Second-order centered time difference; loses one level at each end.
    pub fn dt_centered(&self) -> Result<Field2D> {
        self.check_levels(3)?;
        let mut out = self.like();
        out.l_lo = self.l_lo + 1;
        out.l_hi = self.l_hi - 1;
        let inv = 1.0 / (2.0 * self.dt);
        for l in out.l_lo..=out.l_hi {
            for i in self.i_lo..=self.i_hi {
                out.set(l, i, (self.value(l + 1, i) - self.value(l - 1, i)) * inv);
            }
        }
        Ok(out)
    }

    /// Fourth-order centered space difference; loses two columns per side.
    pub fn dx5(&self) -> Result<Field2D> {
        if self.i_hi < self.i_lo + 4 {
            return Err(Error::InsufficientWindow {
                have: self.i_hi + 1 - self.i_lo,
                need: 5,
            });
        }
        let mut out = self.like();
        out.i_lo = self.i_lo + 2;
        out.i_hi = self.i_hi - 2;
        let inv = 1.0 / (12.0 * self.grid.dx);
        for l in self.l_lo..=self.l_hi {
            for i in out.i_lo..=out.i_hi {
                let d = self.value(l, i - 2) - 8.0 * self.value(l, i - 1)
                    + 8.0 * self.value(l, i + 1)
                    - self.value(l, i + 2);
                out.set(l, i, d * inv);
            }
        }
        Ok(out)
    }

    /// Time derivative; uses the exactly stored companion field when provided
    /// (e.g. d_t u from the evolved velocity), otherwise a centered stencil.
    pub fn dt_with(&self, exact: Option<&Field2D>) -> Result<Field2D> {
        match exact {
            Some(e) => {
                let mut out = e.clone();
                out.l_lo = out.l_lo.max(self.l_lo);
                out.l_hi = out.l_hi.min(self.l_hi);
                out.i_lo = out.i_lo.max(self.i_lo);
                out.i_hi = out.i_hi.min(self.i_hi);
                Ok(out)
            }
            None => self.dt_centered(),
        }
    }

    /// L f = x d_t f + t d_x f.
    pub fn lorentz(&self, exact_dt: Option<&Field2D>) -> Result<Field2D> {
        let ft = self.dt_with(exact_dt)?;
        let fx = self.dx5()?;
        let mut out = self.like();
        out.l_lo = ft.l_lo.max(fx.l_lo);
        out.l_hi = ft.l_hi.min(fx.l_hi);
        out.i_lo = ft.i_lo.max(fx.i_lo);
        out.i_hi = fx.i_hi.min(ft.i_hi);
        for l in out.l_lo..=out.l_hi {
            let t = self.t_level(l);
            for i in out.i_lo..=out.i_hi {
                let x = self.grid.x(i);
                out.set(l, i, x * ft.value(l, i) + t * fx.value(l, i));
            }
        }
        Ok(out)
    }

    /// Cubic Lagrange interpolation in t along grid column i.
    pub fn sample_column(&self, i: usize, t: f64) -> Result<f64> {
        if i < self.i_lo || i > self.i_hi {
            return Err(Error::StencilOutOfDomain { t, x: self.grid.x(i) });
        }
        let l0 = self.bracket_level(t)?;
        let s = (t - self.t_level(l0)) / self.dt;
        let w = lagrange4(s);
        Ok((0..4).map(|k| w[k] * self.value(l0 + k, i)).sum())
    }

    /// Bicubic (4x4 Lagrange) interpolation at an arbitrary point.
    pub fn sample(&self, t: f64, x: f64) -> Result<f64> {
        let l0 = self.bracket_level(t)?;
        let ix = self.grid.floor_index(x);
        let i0 = (ix - 1)
            .max(self.i_lo as isize)
            .min(self.i_hi as isize - 3);
        if i0 < self.i_lo as isize || i0 + 3 > self.i_hi as isize {
            return Err(Error::StencilOutOfDomain { t, x });
        }
        let i0 = i0 as usize;
        let sx = (x - self.grid.x(i0)) / self.grid.dx;
        if !(-0.5..=3.5).contains(&sx) {
            return Err(Error::StencilOutOfDomain { t, x });
        }
        let wx = lagrange4(sx);
        let st = (t - self.t_level(l0)) / self.dt;
        let wt = lagrange4(st);
        let mut acc = 0.0;
        for k in 0..4 {
            let mut row = 0.0;
            for m in 0..4 {
                row += wx[m] * self.value(l0 + k, i0 + m);
            }
            acc += wt[k] * row;
        }
        Ok(acc)
    }

    /// First level of a 4-level interpolation window around time t.
    fn bracket_level(&self, t: f64) -> Result<usize> {
        self.check_levels(4)?;
        let lf = ((t - self.t0) / self.dt).floor() as isize;
        let l0 = (lf - 1)
            .max(self.l_lo as isize)
            .min(self.l_hi as isize - 3);
        let frac = (t - self.t_level(l0 as usize)) / self.dt;
        // allow a half-cell slack at the window ends for roundoff
        if !(-0.5..=3.5).contains(&frac) {
            return Err(Error::HistoryTooShort {
                have0: self.t_level(self.l_lo),
                have1: self.t_level(self.l_hi),
                need0: t,
                need1: t,
            });
        }
        Ok(l0 as usize)
    }
}

/// Lagrange weights for cubic interpolation on 4 unit-spaced nodes at
/// parameter s measured from the first node.
fn lagrange4(s: f64) -> [f64; 4] {
    [
        -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0,
        s * (s - 2.0) * (s - 3.0) / 2.0,
        -s * (s - 1.0) * (s - 3.0) / 2.0,
        s * (s - 1.0) * (s - 2.0) / 6.0,
    ]
}

/// One composite operator d_t^a d_x^b L^j (L applied first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DerivedOp {
    pub dt_count: usize,
    pub dx_count: usize,
    pub lorentz_count: usize,
}

impl DerivedOp {
    pub const IDENTITY: DerivedOp = DerivedOp {
        dt_count: 0,
        dx_count: 0,
        lorentz_count: 0,
    };

    pub fn order(&self) -> usize {
        self.dt_count + self.dx_count + self.lorentz_count
    }

    pub fn label(&self) -> String {
        let mut s = String::new();
        for _ in 0..self.dt_count {
            s.push_str("dt.");
        }
        for _ in 0..self.dx_count {
            s.push_str("dx.");
        }
        for _ in 0..self.lorentz_count {
            s.push_str("L.");
        }
        if s.is_empty() {
            "id".into()
        } else {
            s.trim_end_matches('.').into()
        }
    }

    /// Apply to a field; `exact_dt` is the stored time derivative of the base
    /// field and is propagated through leading spatial differences so the
    /// first time derivative in the chain costs no levels.
    pub fn apply(&self, base: &Field2D, exact_dt: Option<&Field2D>) -> Result<Field2D> {
        let mut cur = base.clone();
        let mut exact = exact_dt.cloned();
        for _ in 0..self.lorentz_count {
            cur = cur.lorentz(exact.as_ref())?;
            exact = None;
        }
        for _ in 0..self.dx_count {
            cur = cur.dx5()?;
            exact = match exact {
                Some(e) => Some(e.dx5()?),
                None => None,
            };
        }
        for _ in 0..self.dt_count {
            cur = cur.dt_with(exact.as_ref())?;
            exact = None;
        }
        Ok(cur)
    }
}

/// All distinct operators of total order <= max_order, each with the number
/// of coordinate-index orderings it represents (d_t d_x and d_x d_t agree on
/// smooth fields, so the mixed operator carries weight 2, and so on).
pub fn operator_family(max_order: usize) -> Vec<(DerivedOp, f64)> {
    let mut out = Vec::new();
    for total in 0..=max_order {
        for j in 0..=total {
            let coord = total - j;
            for a in 0..=coord {
                let b = coord - a;
                let weight = binomial(coord, a);
                out.push((
                    DerivedOp {
                        dt_count: a,
                        dx_count: b,
                        lorentz_count: j,
                    },
                    weight,
                ));
            }
        }
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut v = 1.0;
    for i in 0..k {
        v = v * (n - i) as f64 / (i + 1) as f64;
    }
    v
}
