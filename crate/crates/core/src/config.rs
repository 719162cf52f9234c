//! Run configuration: a line-oriented `section.key = value` file layered over
//! defaults, plus the sizing rules that turn it into concrete solver
//! parameters (final time from the largest requested slice, domain halfwidth
//! from the measured data support when set to "auto").

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::foliation;
use crate::solver::{InitialData, SolverConfig, SystemParams};

/// Domain halfwidth: fixed, or sized from the data support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Halfwidth {
    Auto,
    Fixed(f64),
}

/// Shape family of the initial data.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Gaussian,
    Poly,
}

/// The check groups the verify pipeline can run.
pub const CHECK_NAMES: [&str; 8] = [
    "geometry",
    "frames",
    "commutators",
    "hessian",
    "sobolev",
    "decay",
    "identities",
    "bootstrap",
];

/// Fully parsed configuration with every key at its default or file value.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub dx: f64,
    pub cfl: f64,
    pub halfwidth: Halfwidth,
    pub profile: Profile,
    pub epsilon: f64,
    pub p: f64,
    pub c: f64,
    pub n_mat: [[f64; 2]; 2],
    pub gamma: f64,
    pub delta: f64,
    pub c1: Option<f64>,
    pub s_list: Vec<f64>,
    pub out_dir: String,
    pub store_every: usize,
    pub snapshot_times: Vec<f64>,
    pub checks: Vec<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dx: 0.02,
            cfl: 0.5,
            halfwidth: Halfwidth::Auto,
            profile: Profile::Gaussian,
            epsilon: 1e-3,
            p: 4.0,
            c: 1.0,
            n_mat: [[1.0, 0.0], [0.0, -1.0]],
            gamma: 1.2,
            delta: 0.004,
            c1: None,
            s_list: vec![2.2, 2.4, 2.6, 2.8, 3.0, 3.2, 3.4, 3.6, 3.8, 4.0],
            out_dir: "out".to_string(),
            store_every: 1,
            snapshot_times: Vec::new(),
            checks: CHECK_NAMES.iter().map(|s| s.to_string()).collect(),
        }
    }
}

fn bad(line_no: usize, key: &str, what: &str) -> Error {
    Error::Config(format!("line {line_no}: key '{key}': {what}"))
}

fn parse_f64(line_no: usize, key: &str, value: &str) -> Result<f64> {
    value
        .parse::<f64>()
        .map_err(|_| bad(line_no, key, "expected a number"))
}

fn parse_list(line_no: usize, key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| bad(line_no, key, "expected a comma-separated number list"))
        })
        .collect()
}

impl RunConfig {
    /// Parse a config text over the defaults. Lines are `key = value`, keys
    /// are dotted, `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {line_no}: expected 'key = value', got '{line}'"))
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "grid.dx" => cfg.dx = parse_f64(line_no, key, value)?,
                "grid.cfl" => cfg.cfl = parse_f64(line_no, key, value)?,
                "domain.halfwidth" => {
                    cfg.halfwidth = if value == "auto" {
                        Halfwidth::Auto
                    } else {
                        Halfwidth::Fixed(parse_f64(line_no, key, value)?)
                    }
                }
                "ic.profile" => {
                    cfg.profile = match value {
                        "gaussian" => Profile::Gaussian,
                        "poly" => Profile::Poly,
                        _ => return Err(bad(line_no, key, "expected 'gaussian' or 'poly'")),
                    }
                }
                "ic.epsilon" => cfg.epsilon = parse_f64(line_no, key, value)?,
                "ic.p" => cfg.p = parse_f64(line_no, key, value)?,
                "model.c" => cfg.c = parse_f64(line_no, key, value)?,
                "model.n00" => cfg.n_mat[0][0] = parse_f64(line_no, key, value)?,
                "model.n01" => cfg.n_mat[0][1] = parse_f64(line_no, key, value)?,
                "model.n10" => cfg.n_mat[1][0] = parse_f64(line_no, key, value)?,
                "model.n11" => cfg.n_mat[1][1] = parse_f64(line_no, key, value)?,
                "weights.gamma" => cfg.gamma = parse_f64(line_no, key, value)?,
                "bootstrap.delta" => cfg.delta = parse_f64(line_no, key, value)?,
                "bootstrap.c1" => cfg.c1 = Some(parse_f64(line_no, key, value)?),
                "slices.s_list" => cfg.s_list = parse_list(line_no, key, value)?,
                "output.dir" => cfg.out_dir = value.to_string(),
                "output.store_every" => {
                    cfg.store_every = match value.parse::<usize>() {
                        Ok(v) if v >= 1 => v,
                        _ => return Err(bad(line_no, key, "expected a positive integer")),
                    }
                }
                "snapshot.times" => cfg.snapshot_times = parse_list(line_no, key, value)?,
                "verify.checks" => {
                    let names: Vec<String> =
                        value.split(',').map(|v| v.trim().to_string()).collect();
                    for n in &names {
                        if !CHECK_NAMES.contains(&n.as_str()) {
                            return Err(bad(line_no, key, &format!("unknown check '{n}'")));
                        }
                    }
                    cfg.checks = names;
                }
                _ => return Err(bad(line_no, key, "unknown key")),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Read and parse a config file.
    pub fn from_file(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        RunConfig::parse(&text)
    }

    fn validate(&self) -> Result<()> {
        if !(self.dx > 0.0) {
            return Err(Error::Config("grid.dx must be positive".into()));
        }
        if !(self.cfl > 0.0 && self.cfl <= 0.9) {
            return Err(Error::Config("grid.cfl must lie in (0, 0.9]".into()));
        }
        if !(self.c > 0.0) {
            return Err(Error::Config("model.c must be positive".into()));
        }
        if self.s_list.is_empty() {
            return Err(Error::Config("slices.s_list must not be empty".into()));
        }
        let mut prev = 2.0 - 1e-12;
        for &s in &self.s_list {
            if s < prev {
                return Err(Error::Config(
                    "slices.s_list must be increasing and >= 2".into(),
                ));
            }
            prev = s;
        }
        if self.epsilon < 0.0 {
            return Err(Error::Config("ic.epsilon must be nonnegative".into()));
        }
        Ok(())
    }

    /// Final time: the flat-tail height of the largest requested slice plus a
    /// stencil margin, so every slice is fully inside the computed region.
    pub fn t_max(&self) -> Result<f64> {
        let s_max = *self.s_list.last().unwrap();
        let (_, b) = foliation::band(s_max)?;
        let flat = foliation::t_of(s_max, b + 1.0)?;
        Ok(flat + 0.6)
    }

    /// Initial data closures for the configured profile.
    pub fn initial_data(&self) -> InitialData {
        match self.profile {
            Profile::Gaussian => InitialData::gaussian_like(self.epsilon),
            Profile::Poly => InitialData::poly_decay(self.epsilon, self.p),
        }
    }

    /// Largest |x| where any data component still exceeds a tenth of the
    /// solver's edge watchdog tolerance.
    pub fn support_radius(&self) -> f64 {
        let data = self.initial_data();
        let tol = 1e-11;
        let mut radius = 0.0f64;
        let mut x = 400.0;
        while x > 0.0 {
            let big = [&data.u, &data.ut, &data.v, &data.vt]
                .iter()
                .any(|f| f(x).abs() > tol || f(-x).abs() > tol);
            if big {
                radius = x;
                break;
            }
            x -= 0.05;
        }
        radius
    }

    /// Resolve the halfwidth: fixed value, or t_max + data support + 2.
    pub fn resolve_halfwidth(&self) -> Result<f64> {
        match self.halfwidth {
            Halfwidth::Fixed(h) => Ok(h),
            Halfwidth::Auto => Ok(self.t_max()? + self.support_radius() + 2.0),
        }
    }

    /// The model parameters this config describes (unforced).
    pub fn system_params(&self) -> SystemParams {
        SystemParams {
            c: self.c,
            n_mat: self.n_mat,
            f_u: None,
            f_v: None,
        }
    }

    /// The sized solver configuration.
    pub fn solver_config(&self) -> Result<SolverConfig> {
        Ok(SolverConfig {
            dx: self.dx,
            cfl: self.cfl,
            t0: 2.0,
            t_max: self.t_max()?,
            halfwidth: self.resolve_halfwidth()?,
            store_every: self.store_every,
            check_support: true,
        })
    }

    /// Canonical `key = value` rendering of every resolved field, used for
    /// the run metadata artifact.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| format!("{x}"))
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(s, "grid.dx = {}", self.dx);
        let _ = writeln!(s, "grid.cfl = {}", self.cfl);
        match self.halfwidth {
            Halfwidth::Auto => {
                let _ = writeln!(s, "domain.halfwidth = auto");
            }
            Halfwidth::Fixed(h) => {
                let _ = writeln!(s, "domain.halfwidth = {h}");
            }
        }
        let _ = writeln!(
            s,
            "ic.profile = {}",
            match self.profile {
                Profile::Gaussian => "gaussian",
                Profile::Poly => "poly",
            }
        );
        let _ = writeln!(s, "ic.epsilon = {}", self.epsilon);
        let _ = writeln!(s, "ic.p = {}", self.p);
        let _ = writeln!(s, "model.c = {}", self.c);
        let _ = writeln!(s, "model.n00 = {}", self.n_mat[0][0]);
        let _ = writeln!(s, "model.n01 = {}", self.n_mat[0][1]);
        let _ = writeln!(s, "model.n10 = {}", self.n_mat[1][0]);
        let _ = writeln!(s, "model.n11 = {}", self.n_mat[1][1]);
        let _ = writeln!(s, "weights.gamma = {}", self.gamma);
        let _ = writeln!(s, "bootstrap.delta = {}", self.delta);
        if let Some(c1) = self.c1 {
            let _ = writeln!(s, "bootstrap.c1 = {c1}");
        }
        let _ = writeln!(s, "slices.s_list = {}", list(&self.s_list));
        let _ = writeln!(s, "output.dir = {}", self.out_dir);
        let _ = writeln!(s, "output.store_every = {}", self.store_every);
        if !self.snapshot_times.is_empty() {
            let _ = writeln!(s, "snapshot.times = {}", list(&self.snapshot_times));
        }
        let _ = writeln!(s, "verify.checks = {}", self.checks.join(","));
        s
    }
}
