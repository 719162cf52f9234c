//! Acceptance battery: one test per exit criterion, each printing a single
//! pass/fail line. Quantitative checks are cross-validated against
//! independent oracles implemented here (brute-force quadrature, closed-form
//! solutions) rather than against the library's own numerics alone.

use combfol::energy::{identity_residual, slice_energy, IdentityKind};
use combfol::solver::{
    kg_transform_residual_max, run, BaseField, InitialData, SolverConfig, SystemParams,
};
use combfol::verify::bootstrap::bootstrap_monitor;
use combfol::verify::commutators::{commutator_suite, hessian_identity_check};
use combfol::verify::decay::{interior_decay_probe, ProbeResult};
use combfol::verify::geometry::{
    inverse_consistency_check, jacobian_envelope_check, slice_exactness_check,
};
use combfol::verify::nullform::{null_frame_suppression, null_structure_check};
use combfol::verify::{fit_log_log, sobolev};
use combfol::{config::RunConfig, cutoffs, foliation};

fn verdict(n: u32, name: &str, pass: bool) {
    println!(
        "criterion {n:02} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed");
}

/// Brute-force Simpson integral, independent of the adaptive quadrature.
fn simpson(lo: f64, hi: f64, m: usize, f: impl Fn(f64) -> f64) -> f64 {
    let h = (hi - lo) / m as f64;
    let mut acc = f(lo) + f(hi);
    for k in 1..m {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(lo + k as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn criterion_01_geometry_exactness() {
    let mut pass = true;
    for &s in &[2.0, 3.0, 5.0, 10.0] {
        let (a, b) = foliation::band(s).unwrap();
        let glue = foliation::t_of(s, a).unwrap();
        pass &= (glue - 0.5 * (s * s + 1.0)).abs() <= 1e-9;
        let flat = foliation::t_of(s, b + 1.0).unwrap();
        let lo = 0.5 * (s * s + 1.0);
        let hi = 0.5 * (s * s * s * s + 6.0 * s * s + 1.0).sqrt();
        pass &= lo - 1e-9 <= flat && flat <= hi + 1e-9;
        // independent oracle: the flat height by brute-force Simpson over
        // the band ODE slope
        let oracle = lo
            + simpson(a, b, 20_000, |y| {
                cutoffs::xi(s, y).unwrap().value * y / (s * s + y * y).sqrt()
            });
        pass &= (flat - oracle).abs() <= 1e-9;
    }
    verdict(1, "geometry-exactness", pass);
}

#[test]
fn criterion_02_jacobian_envelope() {
    let c = jacobian_envelope_check(10_000).unwrap();
    let mut pass = c.pass;
    // independent oracle: centered differences of a brute-force Simpson T
    // at band points of a mid-sized slice
    let s = 3.0;
    let (a, b) = foliation::band(s).unwrap();
    let t_brute = |s: f64, r: f64| -> f64 {
        0.5 * (s * s + 1.0)
            + simpson(0.5 * (s * s - 1.0), r.min(b + 0.1), 4000, |y| {
                cutoffs::xi(s, y).unwrap().value * y / (s * s + y * y).sqrt()
            })
    };
    let h = 1e-5;
    for k in 0..20 {
        let r = a + (b - a) * (k as f64 + 0.5) / 20.0;
        let fd = (t_brute(s + h, r) - t_brute(s - h, r)) / (2.0 * h);
        let j = foliation::dt_ds(s, r).unwrap();
        pass &= (j - fd).abs() / fd.abs() <= 1e-5;
    }
    verdict(2, "jacobian-envelope", pass);
}

#[test]
fn criterion_03_inverse_consistency() {
    let c = inverse_consistency_check(100_000).unwrap();
    verdict(3, "inverse-consistency", c.pass);
}

#[test]
fn criterion_04_frame_algebra() {
    let null_n = [[1.0, 0.0], [0.0, -1.0]];
    let mut pass = null_structure_check(&null_n).iter().all(|c| c.pass);
    pass &= null_frame_suppression(&null_n, 4000) <= 1e-14;
    // negative control: a non-null quadratic form must show a visible
    // null-frame 00-component
    let bad_n = [[1.0, 0.0], [0.0, 1.0]];
    pass &= null_frame_suppression(&bad_n, 4000) > 1e-10;
    pass &= slice_exactness_check().unwrap().pass;
    verdict(4, "frame-algebra", pass);
}

#[test]
fn criterion_05_commutator_hessian_identities() {
    let dxs = [0.04, 0.02, 0.01];
    let mut pass = true;
    for c in commutator_suite(&dxs)
        .unwrap()
        .iter()
        .chain(hessian_identity_check(&dxs).unwrap().iter())
    {
        pass &= c.pass;
    }
    verdict(5, "commutator-hessian-identities", pass);
}

// manufactured solution shared by criterion 6
fn us(t: f64, x: f64) -> f64 {
    (-x * x).exp() * t.cos()
}
fn vs(t: f64, x: f64) -> f64 {
    (-x * x).exp() * t.sin()
}
fn f_u(t: f64, x: f64) -> f64 {
    let usxx = (4.0 * x * x - 2.0) * us(t, x);
    -us(t, x) - usxx - vs(t, x).powi(3)
}
fn f_v(t: f64, x: f64) -> f64 {
    let vsxx = (4.0 * x * x - 2.0) * vs(t, x);
    let ut = -(-x * x).exp() * t.sin();
    let ux = -2.0 * x * us(t, x);
    -vs(t, x) - vsxx + vs(t, x) - (ut * ut - ux * ux)
}

fn manufactured_error(dx: f64) -> f64 {
    let params = SystemParams {
        f_u: Some(f_u),
        f_v: Some(f_v),
        ..Default::default()
    };
    let config = SolverConfig {
        dx,
        t_max: 3.0,
        halfwidth: 10.0,
        check_support: false,
        ..Default::default()
    };
    let data = InitialData {
        u: Box::new(|x| us(2.0, x)),
        ut: Box::new(|x| -(-x * x).exp() * 2.0f64.sin()),
        v: Box::new(|x| vs(2.0, x)),
        vt: Box::new(|x| (-x * x).exp() * 2.0f64.cos()),
    };
    let rec = run(&params, &config, &data).unwrap();
    let l = rec.u.l_hi;
    let t = rec.u.t_level(l);
    let mut err = 0.0f64;
    for i in 0..rec.u.grid.n {
        let x = rec.u.grid.x(i);
        err = err.max((rec.u.value(l, i) - us(t, x)).abs());
        err = err.max((rec.v.value(l, i) - vs(t, x)).abs());
    }
    err
}

#[test]
fn criterion_06_solver_order() {
    let dxs = [0.08, 0.04, 0.02];
    let errs: Vec<f64> = dxs.iter().map(|&h| manufactured_error(h)).collect();
    let fit = fit_log_log(&dxs, &errs).unwrap();
    let mut pass = (fit.exponent - 2.0).abs() <= 0.3;

    // free-wave oracle: d'Alembert solution of gaussian data at rest
    let wave_err = |dx: f64| -> f64 {
        let g = |x: f64| 1e-2 * (-2.0 * x * x).exp();
        let params = SystemParams {
            n_mat: [[0.0; 2]; 2],
            ..Default::default()
        };
        let config = SolverConfig {
            dx,
            t_max: 5.0,
            halfwidth: 10.0,
            ..Default::default()
        };
        let data = InitialData {
            u: Box::new(g),
            ut: Box::new(|_| 0.0),
            v: Box::new(|_| 0.0),
            vt: Box::new(|_| 0.0),
        };
        let rec = run(&params, &config, &data).unwrap();
        let l = rec.u.l_hi;
        let t = rec.u.t_level(l);
        let mut err = 0.0f64;
        for i in 0..rec.u.grid.n {
            let x = rec.u.grid.x(i);
            let exact = 0.5 * (g(x - (t - 2.0)) + g(x + (t - 2.0)));
            err = err.max((rec.u.value(l, i) - exact).abs());
        }
        err
    };
    let w1 = wave_err(0.08);
    let w2 = wave_err(0.04);
    pass &= ((w1 / w2).log2() - 2.0).abs() <= 0.5;

    // free-KG oracle: traveling wave cos(kx - wt), w^2 = k^2 + 1, compared
    // inside the numerical domain of dependence of the interior
    let kg_err = |dx: f64| -> f64 {
        let k = 1.0f64;
        let w = (k * k + 1.0).sqrt();
        let params = SystemParams {
            n_mat: [[0.0; 2]; 2],
            ..Default::default()
        };
        let config = SolverConfig {
            dx,
            t_max: 4.0,
            halfwidth: 8.0,
            check_support: false,
            ..Default::default()
        };
        let data = InitialData {
            u: Box::new(|_| 0.0),
            ut: Box::new(|_| 0.0),
            v: Box::new(move |x| (k * x - 2.0 * w).cos()),
            vt: Box::new(move |x| w * (k * x - 2.0 * w).sin()),
        };
        let rec = run(&params, &config, &data).unwrap();
        let l = rec.v.l_hi;
        let t = rec.v.t_level(l);
        let mut err = 0.0f64;
        for i in 0..rec.v.grid.n {
            let x = rec.v.grid.x(i);
            if x.abs() > 8.0 - (t - 2.0) - 1.0 {
                continue;
            }
            err = err.max((rec.v.value(l, i) - (k * x - w * t).cos()).abs());
        }
        err
    };
    let k1 = kg_err(0.08);
    let k2 = kg_err(0.04);
    pass &= ((k1 / k2).log2() - 2.0).abs() <= 0.5;

    verdict(6, "solver-order", pass);
}

#[test]
fn criterion_07_energy_identities() {
    // interior flux balance for a free wave
    let free = run(
        &SystemParams::default(),
        &SolverConfig {
            dx: 0.02,
            t_max: 6.5,
            halfwidth: 12.0,
            ..Default::default()
        },
        &InitialData {
            u: Box::new(|x| 1e-2 * (-2.0 * x * x).exp()),
            ut: Box::new(|_| 0.0),
            v: Box::new(|_| 0.0),
            vt: Box::new(|_| 0.0),
        },
    )
    .unwrap();
    let r = identity_residual(&free, BaseField::U, IdentityKind::Interior, 2.2, 2.8, 1.2).unwrap();
    let e0 = slice_energy(&free.u, Some(&free.ut), 2.2, 1.2, 0.0).unwrap();
    let mut pass = r.lhs.abs() <= 2e-3 * e0.eh && r.rhs.abs() < 1e-12;

    // exterior identity: residual refines, dissipative term stays signed
    let ext = |dx: f64| {
        let rec = run(
            &SystemParams::default(),
            &SolverConfig {
                dx,
                t_max: 6.5,
                halfwidth: 12.0,
                ..Default::default()
            },
            &InitialData::gaussian_like(0.05),
        )
        .unwrap();
        identity_residual(&rec, BaseField::U, IdentityKind::Exterior, 2.2, 2.8, 1.2).unwrap()
    };
    let r1 = ext(0.08);
    let r2 = ext(0.04);
    pass &= r1.dissipative.unwrap() >= 0.0 && r2.dissipative.unwrap() >= 0.0;
    pass &= r2.residual < 0.6 * r1.residual + 1e-10;
    verdict(7, "energy-identities", pass);
}

#[test]
fn criterion_08_sobolev_suite() {
    let mut pass = sobolev::checks(&[2.0, 3.0, 5.0]).unwrap().iter().all(|c| c.pass);
    // dyadic rescaling must leave the inequality ratios bit-identical
    for (a, b) in sobolev::scale_invariance_pairs(2.5).unwrap() {
        pass &= a.to_bits() == b.to_bits();
    }
    verdict(8, "sobolev-suite", pass);
}

#[test]
fn criterion_09_kg_decay() {
    let config = SolverConfig {
        dx: 0.04,
        t_max: 42.0,
        halfwidth: 48.0,
        store_every: 4,
        ..Default::default()
    };
    let data = InitialData {
        u: Box::new(|_| 0.0),
        ut: Box::new(|_| 0.0),
        v: Box::new(|x| 1e-3 * (-x * x).exp()),
        vt: Box::new(|_| 0.0),
    };
    let rec = run(&SystemParams::default(), &config, &data).unwrap();
    let ts: Vec<f64> = (0..10)
        .map(|k| 4.0 * 10.0f64.powf(k as f64 / 9.0))
        .collect();
    let pass = match interior_decay_probe(&rec, BaseField::V, &ts, 0.85).unwrap() {
        ProbeResult::NoSignal => false,
        ProbeResult::Fit(f) => (f.exponent + 0.5).abs() <= 0.1,
    };
    verdict(9, "kg-decay", pass);
}

#[test]
fn criterion_10_bootstrap_experiment() {
    // defaults: eps = 1e-3, gamma = 1.2, delta = 0.004, c = 1, null N,
    // slices up to s = 4
    let cfg = RunConfig::default();
    assert_eq!(*cfg.s_list.last().unwrap(), 4.0);
    let rec = run(
        &cfg.system_params(),
        &cfg.solver_config().unwrap(),
        &cfg.initial_data(),
    )
    .unwrap();
    let ledger =
        bootstrap_monitor(&rec, cfg.gamma, cfg.delta, cfg.epsilon, &cfg.s_list, None).unwrap();
    let mut pass = ledger.total_violations() == 0;
    pass &= (ledger.c1 - 10.0 * ledger.c0).abs() <= 1e-12 * ledger.c0.abs();

    // the normal-form residual refines at second order
    let residual = |dx: f64| {
        let config = SolverConfig {
            dx,
            t_max: 5.0,
            halfwidth: 10.0,
            ..Default::default()
        };
        let rec = run(
            &SystemParams::default(),
            &config,
            &InitialData::gaussian_like(0.05),
        )
        .unwrap();
        kg_transform_residual_max(&rec).unwrap()
    };
    let r1 = residual(0.08);
    let r2 = residual(0.04);
    pass &= ((r1 / r2).log2() - 2.0).abs() <= 0.4;
    verdict(10, "bootstrap-experiment", pass);
}
