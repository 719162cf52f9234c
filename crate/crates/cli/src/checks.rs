//! The `verify` subcommand: assemble the configured check groups into a
//! report.json and exit nonzero if anything fails.
//!
//! Algebraic and inequality checks (geometry, frames, commutators, hessian,
//! sobolev) need no evolution; decay, identities, and bootstrap run their own
//! reference evolutions sized from the config.

use std::fs;
use std::path::Path;

use combfol::config::RunConfig;
use combfol::energy::{identity_residual, IdentityKind};
use combfol::solver::{
    kg_transform_residual_max, run, BaseField, InitialData, RunRecord, SolverConfig,
};
use combfol::verify::bootstrap::bootstrap_monitor;
use combfol::verify::commutators::{commutator_suite, hessian_identity_check};
use combfol::verify::decay::{
    exterior_boundedness_probe, interior_decay_probe, ProbeResult,
};
use combfol::verify::geometry::geometry_suite;
use combfol::verify::nullform::null_structure_check;
use combfol::verify::{sobolev, CheckRecord, Report};
use combfol::{Error, Result};

const LADDER: [f64; 3] = [0.04, 0.02, 0.01];

pub fn cmd_verify(config_path: &Path) -> i32 {
    let cfg = match RunConfig::from_file(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    let mut report = Report::default();
    if let Err(e) = build_report(&cfg, &mut report) {
        eprintln!("verify failed: {e}");
        return crate::exit_code(&e);
    }
    let out = Path::new(&cfg.out_dir);
    if fs::create_dir_all(out).is_err() {
        eprintln!("config error: cannot create output dir {}", cfg.out_dir);
        return 2;
    }
    let json = match serde_json::to_string_pretty(&report) {
        Ok(j) => j,
        Err(e) => {
            eprintln!("verify failed: {e}");
            return 3;
        }
    };
    if fs::write(out.join("report.json"), format!("{json}\n")).is_err() {
        eprintln!("config error: cannot write report.json");
        return 2;
    }
    for c in &report.checks {
        println!(
            "{} {} (value {:.6e})",
            if c.pass { "pass" } else { "FAIL" },
            c.id,
            c.value
        );
    }
    if report.all_pass() {
        0
    } else {
        4
    }
}

fn build_report(cfg: &RunConfig, report: &mut Report) -> Result<()> {
    for name in &cfg.checks {
        match name.as_str() {
            "geometry" => report.extend(geometry_suite()?),
            "frames" => report.extend(null_structure_check(&cfg.n_mat)),
            "commutators" => report.extend(commutator_suite(&LADDER)?),
            "hessian" => report.extend(hessian_identity_check(&LADDER)?),
            "sobolev" => report.extend(sobolev::checks(&[2.0, 3.0, 5.0])?),
            "decay" => report.extend(decay_checks(cfg)?),
            "identities" => report.extend(identity_checks()?),
            "bootstrap" => report.extend(bootstrap_checks(cfg)?),
            other => {
                return Err(Error::Config(format!("unknown check group '{other}'")));
            }
        }
    }
    Ok(())
}

/// Interior sup-norm decay of a free Klein-Gordon pulse (claimed t^{-1/2})
/// and weighted boundedness of the outgoing null derivative of a free wave.
fn decay_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let amp = cfg.epsilon.max(1e-4);

    let params = combfol::solver::SystemParams {
        c: cfg.c,
        ..Default::default()
    };
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
        v: Box::new(move |x| amp * (-x * x).exp()),
        vt: Box::new(|_| 0.0),
    };
    let rec = run(&params, &config, &data)?;
    let ts: Vec<f64> = (0..10)
        .map(|k| 4.0 * 10.0f64.powf(k as f64 / 9.0))
        .collect();
    match interior_decay_probe(&rec, BaseField::V, &ts, 0.85)? {
        ProbeResult::NoSignal => out.push(CheckRecord::new(
            "kg_interior_decay",
            0.0,
            0.0,
            0.0,
            false,
            "no signal above the floor".into(),
        )),
        ProbeResult::Fit(f) => out.push(CheckRecord::new(
            "kg_interior_decay",
            f.exponent,
            -0.5,
            f.exponent,
            (f.exponent + 0.5).abs() <= 0.1,
            format!("fitted interior sup exponent, stderr {:.2e}", f.stderr),
        )),
    }

    let wave = wave_run(0.04, 9.0, 15.0, 1e-2)?;
    let sups = exterior_boundedness_probe(&wave, BaseField::U, &[2.2, 2.6, 3.0, 3.4])?;
    let first = sups[0].max(1e-12);
    let worst = sups.iter().fold(0.0f64, |m, &v| m.max(v));
    out.push(CheckRecord::new(
        "wave_exterior_null_bounded",
        worst,
        3.0 * first,
        worst / first,
        worst <= 3.0 * first + 1e-10,
        "weighted outgoing null derivative along slices".into(),
    ));
    Ok(out)
}

fn wave_run(dx: f64, t_max: f64, halfwidth: f64, amp: f64) -> Result<RunRecord> {
    let params = combfol::solver::SystemParams::default();
    let config = SolverConfig {
        dx,
        t_max,
        halfwidth,
        ..Default::default()
    };
    let data = InitialData {
        u: Box::new(move |x| amp * (-2.0 * x * x).exp()),
        ut: Box::new(|_| 0.0),
        v: Box::new(|_| 0.0),
        vt: Box::new(|_| 0.0),
    };
    run(&params, &config, &data)
}

/// Interior flux balance for a free wave and the exterior identity with its
/// sign-definite dissipative bulk term.
fn identity_checks() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();

    let free = wave_run(0.02, 6.5, 12.0, 1e-2)?;
    let r = identity_residual(&free, BaseField::U, IdentityKind::Interior, 2.2, 2.8, 1.2)?;
    let e0 = combfol::energy::slice_energy(&free.u, Some(&free.ut), 2.2, 1.2, 0.0)?;
    let rel = r.lhs.abs() / e0.eh.max(1e-30);
    out.push(CheckRecord::new(
        "interior_flux_balance",
        r.lhs,
        r.rhs,
        rel,
        rel <= 2e-3 && r.rhs.abs() < 1e-12,
        "free-wave hyperboloid energy change vs cone flux, relative to E^H".into(),
    ));

    let coupled = run(
        &combfol::solver::SystemParams::default(),
        &SolverConfig {
            dx: 0.04,
            t_max: 6.5,
            halfwidth: 12.0,
            ..Default::default()
        },
        &InitialData::gaussian_like(1e-2),
    )?;
    let r = identity_residual(&coupled, BaseField::U, IdentityKind::Exterior, 2.2, 2.8, 1.2)?;
    out.push(CheckRecord::new(
        "exterior_energy_identity",
        r.lhs,
        r.rhs,
        r.residual,
        r.residual <= 0.05,
        "weighted exterior identity relative residual".into(),
    ));
    let d = r.dissipative.unwrap_or(-1.0);
    out.push(CheckRecord::new(
        "exterior_dissipative_sign",
        d,
        0.0,
        d,
        d >= 0.0,
        "dissipative bulk term must be nonnegative".into(),
    ));
    Ok(out)
}

/// The bootstrap growth ledger on the configured run, plus the refinement
/// order of the Klein-Gordon normal-form residual.
fn bootstrap_checks(cfg: &RunConfig) -> Result<Vec<CheckRecord>> {
    if cfg.s_list.len() < 6 {
        return Err(Error::Config(
            "the bootstrap check needs at least 6 entries in slices.s_list".into(),
        ));
    }
    let rec = run(
        &cfg.system_params(),
        &cfg.solver_config()?,
        &cfg.initial_data(),
    )?;
    let ledger = bootstrap_monitor(&rec, cfg.gamma, cfg.delta, cfg.epsilon, &cfg.s_list, cfg.c1)?;
    let mut out = ledger.checks();

    let residual_at = |dx: f64| -> Result<f64> {
        let params = combfol::solver::SystemParams {
            c: cfg.c,
            n_mat: cfg.n_mat,
            ..Default::default()
        };
        let config = SolverConfig {
            dx,
            t_max: 5.0,
            halfwidth: 10.0,
            ..Default::default()
        };
        let rec = run(&params, &config, &InitialData::gaussian_like(0.05))?;
        kg_transform_residual_max(&rec)
    };
    let r1 = residual_at(0.08)?;
    let r2 = residual_at(0.04)?;
    let slope = (r1 / r2).log2();
    out.push(CheckRecord::new(
        "kg_transform_residual_order",
        r1,
        r2,
        slope,
        (slope - 2.0).abs() <= 0.4,
        "normal-form equation residual refinement slope".into(),
    ));
    Ok(out)
}
