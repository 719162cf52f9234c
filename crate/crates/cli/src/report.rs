//! The `report` subcommand: print a deterministic human-readable summary of
//! a previous run directory.

use std::fs;
use std::path::Path;

pub fn cmd_report(run_dir: &Path) -> i32 {
    let energies = match fs::read_to_string(run_dir.join("energies.csv")) {
        Ok(s) => s,
        Err(_) => {
            eprintln!("missing artifact: {}/energies.csv", run_dir.display());
            return 2;
        }
    };
    let meta: serde_json::Value = match fs::read_to_string(run_dir.join("run_meta.json"))
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
    {
        Some(v) => v,
        None => {
            eprintln!("missing artifact: {}/run_meta.json", run_dir.display());
            return 2;
        }
    };

    println!("run summary ({})", run_dir.display());
    for key in ["dx", "dt", "cfl", "t0", "t_max", "halfwidth", "grid_points"] {
        if let Some(v) = meta.get(key) {
            println!("  {key} = {v}");
        }
    }
    match meta.get("c0") {
        Some(serde_json::Value::Number(n)) => println!("  measured C0 = {n}"),
        _ => println!("  measured C0 = (not computed)"),
    }

    // base-order energy rows per slice
    println!("  slice energies (order 0 fields):");
    println!("    {:>6} {:>14} {:>14} {:>14} {:>14} {:>14}", "s", "EH", "ET", "EP", "EK", "total");
    let mut rows = 0;
    for line in energies.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 8 || cols[1] != "0" || cols[2] != "0" {
            continue;
        }
        println!(
            "    {:>6} {:>14} {:>14} {:>14} {:>14} {:>14}",
            cols[0], cols[3], cols[4], cols[5], cols[6], cols[7]
        );
        rows += 1;
    }
    if rows == 0 {
        eprintln!("energies.csv holds no base-order rows");
        return 2;
    }

    // verification verdicts, when a report exists alongside the run
    if let Ok(text) = fs::read_to_string(run_dir.join("report.json")) {
        if let Ok(rep) = serde_json::from_str::<serde_json::Value>(&text) {
            if let Some(checks) = rep.get("checks").and_then(|c| c.as_array()) {
                println!("  verification checks:");
                for c in checks {
                    let id = c.get("id").and_then(|v| v.as_str()).unwrap_or("?");
                    let pass = c.get("pass").and_then(|v| v.as_bool()).unwrap_or(false);
                    println!("    {} {}", if pass { "pass" } else { "FAIL" }, id);
                }
            }
        }
    }
    0
}
