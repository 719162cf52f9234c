//! Foliation-adapted energies: the slice energies E^H / E^T / E^P, the cone
//! flux E^K through t = |x| + 1, high-order sums over d^I L^j fields, and the
//! residuals of the interior and exterior energy identities.
//!
//! On every piece of a slice the integrand can be written as one completed
//! square: with the slice slope m = dT/dx and the spacelike factor zeta,
//!
//! ```text
//! (1 + w_gamma)^2 ( zeta^2 u_t^2 + (m u_t + u_x)^2 + c^2 u^2 )
//! ```
//!
//! which reduces to the hyperbolic form ((x/t)u_t + u_x)^2 + (s/t)^2 u_t^2
//! on the hyperbola, to the transition form with zeta in the band, and to
//! the weighted flat form (m = 0, zeta = 1) on the tails. Sums of squares
//! keep every reported entry nonnegative by construction.

use crate::error::{Error, Result};
use crate::foliation;
use crate::lattice::{operator_family, DerivedOp, Field2D};
use crate::quad;
use crate::solver::{BaseField, RunRecord};
use crate::weights;

/// Energy of one field on one slice, split by region.
#[derive(Debug, Clone, Copy)]
pub struct EnergyBreakdown {
    pub s: f64,
    pub gamma: f64,
    pub c: f64,
    pub eh: f64,
    pub et: f64,
    pub ep: f64,
    /// Cone flux since some reference slice; zero unless the caller fills it.
    pub ek: f64,
}

impl EnergyBreakdown {
    pub fn ee(&self) -> f64 {
        self.et + self.ep
    }

    pub fn total(&self) -> f64 {
        self.eh + self.et + self.ep + self.ek
    }
}

/// A field and its first derivatives sampled along the curve t = T(s, x),
/// one entry per usable grid column.
pub struct SliceSamples {
    pub s: f64,
    pub dx: f64,
    /// x of the first sample.
    pub x0: f64,
    pub w: Vec<f64>,
    pub wt: Vec<f64>,
    pub wx: Vec<f64>,
}

impl SliceSamples {
    pub fn x(&self, k: usize) -> f64 {
        self.x0 + k as f64 * self.dx
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }
}

/// Interpolate a field and its derivatives onto slice s, cubic in t per
/// grid column.
pub fn sample_slice(w: &Field2D, exact_dt: Option<&Field2D>, s: f64) -> Result<SliceSamples> {
    let wt = w.dt_with(exact_dt)?;
    let wx = w.dx5()?;
    let i_lo = wx.i_lo.max(wt.i_lo);
    let i_hi = wx.i_hi.min(wt.i_hi);
    let cover = |e: Error| match e {
        Error::HistoryTooShort { .. } | Error::InsufficientWindow { .. } => {
            Error::WindowDoesNotCoverSlice(s)
        }
        other => other,
    };
    let n = i_hi + 1 - i_lo;
    let mut out = SliceSamples {
        s,
        dx: w.grid.dx,
        x0: w.grid.x(i_lo),
        w: Vec::with_capacity(n),
        wt: Vec::with_capacity(n),
        wx: Vec::with_capacity(n),
    };
    for i in i_lo..=i_hi {
        let t = foliation::t_of(s, w.grid.x(i))?;
        out.w.push(w.sample_column(i, t).map_err(cover)?);
        out.wt.push(wt.sample_column(i, t).map_err(cover)?);
        out.wx.push(wx.sample_column(i, t).map_err(cover)?);
    }
    Ok(out)
}

/// The three algebraically equal integrand forms at one point of a slice:
/// completed in d_t (the form used for the reported energies), the raw
/// quadratic form, and the form completed in d_x. The w_gamma factor is
/// included in all three.
pub fn integrand_forms(
    s: f64,
    x: f64,
    w: f64,
    wt: f64,
    wx: f64,
    gamma: f64,
    c: f64,
) -> Result<[f64; 3]> {
    let m = foliation::dt_dx(s, x)?;
    let z2 = weights::zeta(s, x)?.powi(2);
    let t = foliation::t_of(s, x)?;
    let wg = weights::w(gamma, t, x);
    let amp = (1.0 + wg) * (1.0 + wg);
    let mass = c * c * w * w;
    let a = m * wt + wx;
    let b = m * wx + wt;
    Ok([
        amp * (z2 * wt * wt + a * a + mass),
        amp * (wt * wt + wx * wx + 2.0 * m * wt * wx + mass),
        amp * (z2 * wx * wx + b * b + mass),
    ])
}

/// Integrate per-column values over [lo, hi]: composite Simpson on the whole
/// columns inside, trapezoid fragments (linear in the cell) at the two cut
/// points. Assumes the integrand is continuous across the cuts.
fn masked_integral(g: &[f64], x0: f64, dx: f64, lo: f64, hi: f64) -> f64 {
    if g.is_empty() || hi <= lo {
        return 0.0;
    }
    let x_last = x0 + (g.len() - 1) as f64 * dx;
    let lo = lo.max(x0);
    let hi = hi.min(x_last);
    if hi <= lo {
        return 0.0;
    }
    let at = |x: f64| -> f64 {
        // linear interpolation between neighboring columns
        let p = (x - x0) / dx;
        let k = (p.floor() as usize).min(g.len() - 2);
        let f = p - k as f64;
        g[k] * (1.0 - f) + g[k + 1] * f
    };
    let k_lo = ((lo - x0) / dx).ceil() as usize;
    let k_hi = ((hi - x0) / dx).floor() as usize;
    if k_hi < k_lo {
        // the window sits inside one cell
        return 0.5 * (at(lo) + at(hi)) * (hi - lo);
    }
    let mut total = quad::simpson_uniform(&g[k_lo..=k_hi], dx);
    let frag_lo = x0 + k_lo as f64 * dx - lo;
    if frag_lo > 1e-12 * dx {
        total += 0.5 * (at(lo) + g[k_lo]) * frag_lo;
    }
    let frag_hi = hi - (x0 + k_hi as f64 * dx);
    if frag_hi > 1e-12 * dx {
        total += 0.5 * (g[k_hi] + at(hi)) * frag_hi;
    }
    total
}

/// Relative size of the field at the outermost usable columns, used to
/// detect support reaching the grid edge.
const SUPPORT_TOL: f64 = 1e-12;

/// Slice energy of one field, split into hyperbolic / transition / flat
/// contributions.
pub fn slice_energy(
    w: &Field2D,
    exact_dt: Option<&Field2D>,
    s: f64,
    gamma: f64,
    c: f64,
) -> Result<EnergyBreakdown> {
    let smp = sample_slice(w, exact_dt, s)?;
    slice_energy_from_samples(&smp, gamma, c)
}

/// Same as `slice_energy` for pre-interpolated samples.
pub fn slice_energy_from_samples(
    smp: &SliceSamples,
    gamma: f64,
    c: f64,
) -> Result<EnergyBreakdown> {
    let s = smp.s;
    let (a, b) = foliation::band(s)?;
    let n = smp.len();
    let mut g = Vec::with_capacity(n);
    let mut peak = 0.0f64;
    for k in 0..n {
        let forms = integrand_forms(s, smp.x(k), smp.w[k], smp.wt[k], smp.wx[k], gamma, c)?;
        g.push(forms[0]);
        peak = peak.max(smp.w[k].abs());
    }
    if peak > 0.0 {
        for &k in &[0usize, n - 1] {
            if smp.w[k].abs() > SUPPORT_TOL * peak {
                return Err(Error::SupportTruncated {
                    field: "slice sample",
                    value: smp.w[k].abs(),
                    x: smp.x(k),
                });
            }
        }
    }
    let x_last = smp.x(n - 1);
    let eh = masked_integral(&g, smp.x0, smp.dx, -a, a);
    let et = masked_integral(&g, smp.x0, smp.dx, -b, -a)
        + masked_integral(&g, smp.x0, smp.dx, a, b);
    let ep = masked_integral(&g, smp.x0, smp.dx, smp.x0, -b)
        + masked_integral(&g, smp.x0, smp.dx, b, x_last);
    Ok(EnergyBreakdown {
        s,
        gamma,
        c,
        eh,
        et,
        ep,
        ek: 0.0,
    })
}

/// Flux of the energy through both branches of the cone boundary
/// t = |x| + 1 between slices s0 and s:
/// integral of |(x/r) u_t + u_x|^2 + c^2 u^2 in dt.
pub fn cone_energy(
    w: &Field2D,
    exact_dt: Option<&Field2D>,
    s0: f64,
    s: f64,
    c: f64,
) -> Result<f64> {
    if s <= s0 {
        return Err(Error::InsufficientRange { s0, s1: s });
    }
    let t_lo = 0.5 * (s0 * s0 + 1.0);
    let t_hi = 0.5 * (s * s + 1.0);
    let (have0, have1) = w.t_span();
    if t_lo < have0 - 1e-9 || t_hi > have1 + 1e-9 {
        return Err(Error::HistoryTooShort {
            have0,
            have1,
            need0: t_lo,
            need1: t_hi,
        });
    }
    let wt = w.dt_with(exact_dt)?;
    let wx = w.dx5()?;
    let m = (((t_hi - t_lo) / w.grid.dx).ceil() as usize).max(64) | 1;
    let h = (t_hi - t_lo) / (m - 1) as f64;
    let mut total = 0.0;
    for &sign in &[1.0f64, -1.0] {
        let vals: Vec<f64> = (0..m)
            .map(|k| -> Result<f64> {
                let t = t_lo + k as f64 * h;
                let x = sign * (t - 1.0);
                let u = w.sample(t, x)?;
                let d1 = sign * wt.sample(t, x)? + wx.sample(t, x)?;
                Ok(d1 * d1 + c * c * u * u)
            })
            .collect::<Result<Vec<f64>>>()?;
        total += quad::simpson_uniform(&vals, h);
    }
    Ok(total)
}

/// Per-column geometry of one slice over one grid, precomputed once so that
/// repeated energies of derived fields on the same slice skip the band
/// quadrature behind `t_of`.
pub struct SliceGeometry {
    pub s: f64,
    pub x0: f64,
    pub dx: f64,
    /// T(s, x_i) per grid column.
    pub t: Vec<f64>,
    /// (1 + w_gamma)^2 per column.
    pub amp: Vec<f64>,
    /// Slice slope dT/dx per column.
    pub m: Vec<f64>,
    /// zeta^2 per column.
    pub z2: Vec<f64>,
    pub a: f64,
    pub b: f64,
}

/// Precompute slice geometry for every column of a grid.
pub fn slice_geometry(grid: &crate::lattice::Grid, s: f64, gamma: f64) -> Result<SliceGeometry> {
    let (a, b) = foliation::band(s)?;
    let t_flat = foliation::t_of(s, b)?;
    let n = grid.n;
    let mut t = Vec::with_capacity(n);
    let mut amp = Vec::with_capacity(n);
    let mut m = Vec::with_capacity(n);
    let mut z2 = Vec::with_capacity(n);
    for i in 0..n {
        let x = grid.x(i);
        let ti = if x.abs() >= b {
            t_flat
        } else {
            foliation::t_of(s, x)?
        };
        let wg = weights::w(gamma, ti, x);
        t.push(ti);
        amp.push((1.0 + wg) * (1.0 + wg));
        m.push(foliation::dt_dx(s, x)?);
        z2.push(weights::zeta(s, x)?.powi(2));
    }
    Ok(SliceGeometry {
        s,
        x0: grid.x0,
        dx: grid.dx,
        t,
        amp,
        m,
        z2,
        a,
        b,
    })
}

/// Slice energy against precomputed geometry; the field must live on the
/// grid the geometry was built for.
pub fn slice_energy_cached(
    w: &Field2D,
    exact_dt: Option<&Field2D>,
    geo: &SliceGeometry,
    gamma: f64,
    c: f64,
) -> Result<EnergyBreakdown> {
    if (w.grid.x0 - geo.x0).abs() > 1e-12 || (w.grid.dx - geo.dx).abs() > 1e-15 {
        return Err(Error::Config(
            "slice geometry built for a different grid".into(),
        ));
    }
    let wt = w.dt_with(exact_dt)?;
    let wx = w.dx5()?;
    let i_lo = wx.i_lo.max(wt.i_lo);
    let i_hi = wx.i_hi.min(wt.i_hi);
    let cover = |e: Error| match e {
        Error::HistoryTooShort { .. } | Error::InsufficientWindow { .. } => {
            Error::WindowDoesNotCoverSlice(geo.s)
        }
        other => other,
    };
    let n = i_hi + 1 - i_lo;
    let mut g = Vec::with_capacity(n);
    let mut peak = 0.0f64;
    let mut edge = [0.0f64; 2];
    for i in i_lo..=i_hi {
        let t = geo.t[i];
        let u = w.sample_column(i, t).map_err(cover)?;
        let ut = wt.sample_column(i, t).map_err(cover)?;
        let ux = wx.sample_column(i, t).map_err(cover)?;
        let (m, z2, amp) = (geo.m[i], geo.z2[i], geo.amp[i]);
        let sq = m * ut + ux;
        g.push(amp * (z2 * ut * ut + sq * sq + c * c * u * u));
        peak = peak.max(u.abs());
        if i == i_lo {
            edge[0] = u.abs();
        }
        if i == i_hi {
            edge[1] = u.abs();
        }
    }
    if peak > 0.0 {
        for (k, &e) in edge.iter().enumerate() {
            if e > SUPPORT_TOL * peak {
                return Err(Error::SupportTruncated {
                    field: "slice sample",
                    value: e,
                    x: geo.x0 + (if k == 0 { i_lo } else { i_hi }) as f64 * geo.dx,
                });
            }
        }
    }
    let x0 = geo.x0 + i_lo as f64 * geo.dx;
    let x_last = x0 + (n - 1) as f64 * geo.dx;
    let (a, b) = (geo.a, geo.b);
    let eh = masked_integral(&g, x0, geo.dx, -a, a);
    let et =
        masked_integral(&g, x0, geo.dx, -b, -a) + masked_integral(&g, x0, geo.dx, a, b);
    let ep =
        masked_integral(&g, x0, geo.dx, x0, -b) + masked_integral(&g, x0, geo.dx, b, x_last);
    Ok(EnergyBreakdown {
        s: geo.s,
        gamma,
        c,
        eh,
        et,
        ep,
        ek: 0.0,
    })
}

/// One row of the high-order energy table.
pub struct HighOrderRow {
    pub op: DerivedOp,
    pub weight: f64,
    pub breakdown: EnergyBreakdown,
}

/// Energies of every d^I L^j field with |I| + j <= n, weighted by the number
/// of coordinate-index orderings.
pub fn high_order_energy(
    w: &Field2D,
    exact_dt: Option<&Field2D>,
    n: usize,
    s: f64,
    gamma: f64,
    c: f64,
) -> Result<Vec<HighOrderRow>> {
    let mut rows = Vec::new();
    for (op, weight) in operator_family(n) {
        let derived = op.apply(w, exact_dt)?;
        let breakdown = slice_energy(&derived, None, s, gamma, c)?;
        rows.push(HighOrderRow {
            op,
            weight,
            breakdown,
        });
    }
    Ok(rows)
}

/// Weighted sum of one breakdown component over a table.
pub fn table_sum(rows: &[HighOrderRow], f: impl Fn(&EnergyBreakdown) -> f64) -> f64 {
    rows.iter().map(|r| r.weight * f(&r.breakdown)).sum()
}

/// Which energy identity to check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    Interior,
    Exterior,
}

/// Residual of an energy identity, with the pieces that built it.
#[derive(Debug, Clone, Copy)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    /// |lhs - rhs| / max(|lhs|, |rhs|, 1e-30).
    pub residual: f64,
    /// Exterior only: the dissipative bulk term, which must be >= 0.
    pub dissipative: Option<f64>,
}

/// Source term f of the equation Box w + c^2 w = f satisfied by one of the
/// evolved fields, reconstructed from the record (cubic coupling for u,
/// quadratic derivative coupling for v, plus any manufactured forcing).
pub fn source_field(rec: &RunRecord, field: BaseField) -> Result<Field2D> {
    let grid = rec.u.grid;
    let template = match field {
        BaseField::U => rec.field(BaseField::U),
        BaseField::V => rec.field(BaseField::V),
    };
    let (l_lo, l_hi) = (template.l_lo, template.l_hi);
    let ux = rec.u.dx5()?;
    let mut levels: Vec<Vec<f64>> = Vec::with_capacity(l_hi + 1);
    let nm = &rec.params.n_mat;
    let cross = nm[0][1] + nm[1][0];
    for l in 0..=l_hi {
        let t = template.t_level(l);
        let mut row = vec![0.0; grid.n];
        if l >= l_lo {
            for i in ux.i_lo..=ux.i_hi {
                let x = grid.x(i);
                row[i] = match field {
                    BaseField::U => {
                        let v = rec.v.value(l, i);
                        let mut f = v * v * v;
                        if let Some(fu) = rec.params.f_u {
                            f += fu(t, x);
                        }
                        f
                    }
                    BaseField::V => {
                        let ut = rec.ut.value(l, i);
                        let uxv = ux.value(l, i);
                        let mut f =
                            nm[0][0] * ut * ut + cross * ut * uxv + nm[1][1] * uxv * uxv;
                        if let Some(fv) = rec.params.f_v {
                            f += fv(t, x);
                        }
                        f
                    }
                };
            }
        }
        levels.push(row);
    }
    let mut f2 = Field2D::from_levels(grid, template.t0, template.dt, levels);
    f2.l_lo = l_lo;
    f2.l_hi = l_hi;
    f2.i_lo = ux.i_lo;
    f2.i_hi = ux.i_hi;
    Ok(f2)
}

/// Composite Simpson over [s0, s1] of a slice functional.
fn integrate_s(s0: f64, s1: f64, m: usize, f: impl Fn(f64) -> Result<f64>) -> Result<f64> {
    let m = m.max(9) | 1;
    let h = (s1 - s0) / (m - 1) as f64;
    let vals: Vec<f64> = (0..m)
        .map(|k| f(s0 + k as f64 * h))
        .collect::<Result<Vec<f64>>>()?;
    Ok(quad::simpson_uniform(&vals, h))
}

/// Evaluate both sides of the interior or exterior energy identity for one
/// evolved field of a run, between slices s0 and s1.
pub fn identity_residual(
    rec: &RunRecord,
    field: BaseField,
    which: IdentityKind,
    s0: f64,
    s1: f64,
    gamma: f64,
) -> Result<IdentityResidual> {
    if s1 <= s0 {
        return Err(Error::InsufficientRange { s0, s1 });
    }
    let c = match field {
        BaseField::U => 0.0,
        BaseField::V => rec.params.c,
    };
    let w = rec.field(field);
    let exact = Some(rec.velocity(field));
    let fsrc = source_field(rec, field)?;
    let wt = w.dt_with(exact)?;
    let wx = w.dx5()?;

    let e0 = slice_energy(w, exact, s0, gamma, c)?;
    let e1 = slice_energy(w, exact, s1, gamma, c)?;
    let ek = cone_energy(w, exact, s0, s1, c)?;

    // slice resolution for the s'-integrals: follow the stored level spacing
    let m = (((s1 - s0) / (0.2 * w.dt.max(1e-9))).ceil() as usize).clamp(65, 1201);

    match which {
        IdentityKind::Interior => {
            // E^H(s1) - E^H(s0) - E^K = int int 2 u_t f (s'/t) dx ds'
            let lhs = e1.eh - e0.eh - ek;
            let rhs = integrate_s(s0, s1, m, |sp| {
                let a = 0.5 * (sp * sp - 1.0);
                let i_lo = wx.i_lo.max(wt.i_lo);
                let i_hi = wx.i_hi.min(wt.i_hi);
                let mut vals = Vec::new();
                let mut x0 = None;
                for i in i_lo..=i_hi {
                    let x = w.grid.x(i);
                    if x.abs() > a {
                        continue;
                    }
                    let t = (sp * sp + x * x).sqrt();
                    let val = 2.0 * wt.sample_column(i, t)? * fsrc.sample_column(i, t)? * sp / t;
                    if x0.is_none() {
                        x0 = Some(x);
                    }
                    vals.push(val);
                }
                let g = vals;
                let x0 = x0.unwrap_or(0.0);
                Ok(masked_integral(&g, x0, w.grid.dx, -a, a))
            })?;
            let residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-30);
            Ok(IdentityResidual {
                lhs,
                rhs,
                residual,
                dissipative: None,
            })
        }
        IdentityKind::Exterior => {
            // E^E(s1) + E^K = E^E(s0) + source term - dissipative term
            let lhs = e1.ee() + ek;
            let exterior_integral = |sp: f64,
                                     point: &dyn Fn(f64, f64, f64, f64, f64) -> f64|
             -> Result<f64> {
                let a = 0.5 * (sp * sp - 1.0);
                let i_lo = wx.i_lo.max(wt.i_lo);
                let i_hi = wx.i_hi.min(wt.i_hi);
                let mut g = Vec::new();
                let mut x0 = None;
                for i in i_lo..=i_hi {
                    let x = w.grid.x(i);
                    if x.abs() < a - 2.0 * w.grid.dx {
                        if x0.is_some() {
                            g.push(0.0);
                        }
                        continue;
                    }
                    let t = foliation::t_of(sp, x)?;
                    let jac = foliation::dt_ds(sp, x)?;
                    let uval = w.sample_column(i, t)?;
                    let utv = wt.sample_column(i, t)?;
                    let uxv = wx.sample_column(i, t)?;
                    let fv = fsrc.sample_column(i, t)?;
                    let val = point(x, uval, utv, uxv, fv) * jac;
                    if x0.is_none() {
                        x0 = Some(x);
                    }
                    g.push(if x.abs() >= a { val } else { 0.0 });
                }
                let x0 = x0.unwrap_or(0.0);
                let x_last = x0 + (g.len().saturating_sub(1)) as f64 * w.grid.dx;
                Ok(masked_integral(&g, x0, w.grid.dx, x0, -a)
                    + masked_integral(&g, x0, w.grid.dx, a, x_last))
            };
            let source = integrate_s(s0, s1, m, |sp| {
                exterior_integral(sp, &|x, _u, ut, _ux, f| {
                    let t = foliation::t_of(sp, x).unwrap();
                    let wg = weights::w(gamma, t, x);
                    2.0 * (1.0 + wg) * (1.0 + wg) * ut * f
                })
            })?;
            let dissipative = integrate_s(s0, s1, m, |sp| {
                exterior_integral(sp, &|x, u, ut, ux, _f| {
                    let t = foliation::t_of(sp, x).unwrap();
                    let q = (x.abs() - t).abs();
                    let wg = weights::w(gamma, t, x);
                    let wb = weights::w_bar(gamma, t, x);
                    let d1 = x.signum() * ut + ux;
                    2.0 * (wb + gamma * wg / (1.0 + q)) * (1.0 + wg) * (d1 * d1 + c * c * u * u)
                })
            })?;
            let rhs = e0.ee() + source - dissipative;
            let residual = (lhs - rhs).abs() / lhs.abs().max(rhs.abs()).max(1e-30);
            Ok(IdentityResidual {
                lhs,
                rhs,
                residual,
                dissipative: Some(dissipative),
            })
        }
    }
}
