//! The `run` subcommand: evolve the configured system and emit the CSV/JSON
//! artifacts. All reductions are sequential with a fixed order, so identical
//! configs produce byte-identical files.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use combfol::config::RunConfig;
use combfol::energy::{cone_energy, slice_energy_cached, slice_geometry};
use combfol::lattice::operator_family;
use combfol::solver::{run, RunRecord};
use combfol::verify::bootstrap::bootstrap_monitor;
use combfol::Result;

pub fn cmd_run(config_path: &Path) -> i32 {
    let cfg = match RunConfig::from_file(config_path) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("config error: {e}");
            return 2;
        }
    };
    match run_artifacts(&cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("run failed: {e}");
            let code = crate::exit_code(&e);
            if code == 3 {
                let diag = serde_json::json!({ "error": format!("{e}") });
                let _ = fs::create_dir_all(&cfg.out_dir);
                let _ = fs::write(
                    Path::new(&cfg.out_dir).join("diagnostics.json"),
                    format!("{diag}\n"),
                );
            }
            code
        }
    }
}

#[derive(Serialize)]
struct RunMeta {
    version: &'static str,
    config: String,
    t0: f64,
    t_max: f64,
    halfwidth: f64,
    dx: f64,
    dt: f64,
    cfl: f64,
    grid_points: usize,
    stored_levels: usize,
    c0: Option<f64>,
}

fn run_artifacts(cfg: &RunConfig) -> Result<()> {
    let out = Path::new(&cfg.out_dir);
    fs::create_dir_all(out)?;
    let params = cfg.system_params();
    let sc = cfg.solver_config()?;
    let rec = run(&params, &sc, &cfg.initial_data())?;

    fs::write(out.join("energies.csv"), energy_csv(&rec, cfg)?)?;
    write_snapshots(&rec, cfg, out)?;

    // C0 is only defined once enough slices are monitored for the bound rows
    let c0 = if cfg.s_list.len() >= 6 && cfg.epsilon > 0.0 {
        bootstrap_monitor(&rec, cfg.gamma, cfg.delta, cfg.epsilon, &cfg.s_list, cfg.c1)
            .ok()
            .map(|l| l.c0)
    } else {
        None
    };
    let meta = RunMeta {
        version: env!("CARGO_PKG_VERSION"),
        config: cfg.render(),
        t0: sc.t0,
        t_max: sc.t_max,
        halfwidth: sc.halfwidth,
        dx: sc.dx,
        dt: sc.cfl * sc.dx,
        cfl: sc.cfl,
        grid_points: rec.u.grid.n,
        stored_levels: rec.u.nt,
        c0,
    };
    fs::write(
        out.join("run_meta.json"),
        format!("{}\n", serde_json::to_string_pretty(&meta)?),
    )?;
    Ok(())
}

/// Per-slice, per-derivative-order energy table. Rows are grouped by the
/// coordinate-derivative count order_I and the boost count order_j; each row
/// sums the wave-field (massless) and Klein-Gordon contributions.
fn energy_csv(rec: &RunRecord, cfg: &RunConfig) -> Result<String> {
    let grid = rec.u.grid;
    let geos: Vec<_> = cfg
        .s_list
        .iter()
        .map(|&s| slice_geometry(&grid, s, cfg.gamma))
        .collect::<Result<Vec<_>>>()?;
    let ns = cfg.s_list.len();

    // acc[slice][(order_I, order_j)] = [EH, ET, EP]
    let mut acc: Vec<BTreeMap<(usize, usize), [f64; 3]>> = vec![BTreeMap::new(); ns];
    let fields = [
        (&rec.u, Some(&rec.ut), 0.0),
        (&rec.v, Some(&rec.vt), rec.params.c),
    ];
    for (base, exact, c) in fields {
        for (op, weight) in operator_family(2) {
            let derived = op.apply(base, exact)?;
            let key = (op.dt_count + op.dx_count, op.lorentz_count);
            for (k, geo) in geos.iter().enumerate() {
                let b = slice_energy_cached(&derived, None, geo, cfg.gamma, c)?;
                let cell = acc[k].entry(key).or_insert([0.0; 3]);
                cell[0] += weight * b.eh;
                cell[1] += weight * b.et;
                cell[2] += weight * b.ep;
            }
        }
    }

    let s0 = cfg.s_list[0];
    let mut csv = String::from("s,order_I,order_j,EH,ET,EP,EK,total\n");
    for (k, &s) in cfg.s_list.iter().enumerate() {
        // cone flux is tracked for the undifferentiated fields only
        let ek0 = if s > s0 {
            cone_energy(&rec.u, Some(&rec.ut), s0, s, 0.0)?
                + cone_energy(&rec.v, Some(&rec.vt), s0, s, rec.params.c)?
        } else {
            0.0
        };
        for (&(oi, oj), cell) in &acc[k] {
            let ek = if (oi, oj) == (0, 0) { ek0 } else { 0.0 };
            let total = cell[0] + cell[1] + cell[2] + ek;
            csv.push_str(&format!(
                "{s},{oi},{oj},{:.12e},{:.12e},{:.12e},{ek:.12e},{total:.12e}\n",
                cell[0], cell[1], cell[2]
            ));
        }
    }
    Ok(csv)
}

/// One CSV per requested snapshot time, read from the nearest stored level.
fn write_snapshots(rec: &RunRecord, cfg: &RunConfig, out: &Path) -> Result<()> {
    if cfg.snapshot_times.is_empty() {
        return Ok(());
    }
    let dir = out.join("snapshots");
    fs::create_dir_all(&dir)?;
    for (idx, &t) in cfg.snapshot_times.iter().enumerate() {
        let l = ((t - rec.u.t0) / rec.u.dt).round();
        let l = l.clamp(rec.u.l_lo as f64, rec.u.l_hi as f64) as usize;
        let tl = rec.u.t_level(l);
        let mut csv = String::from("t,x,u,ut,v,vt\n");
        for i in 0..rec.u.grid.n {
            csv.push_str(&format!(
                "{tl},{},{:.12e},{:.12e},{:.12e},{:.12e}\n",
                rec.u.grid.x(i),
                rec.u.value(l, i),
                rec.ut.value(l, i),
                rec.v.value(l, i),
                rec.vt.value(l, i)
            ));
        }
        fs::write(dir.join(format!("snap_{idx:03}.csv")), csv)?;
    }
    Ok(())
}
