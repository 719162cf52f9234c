//! Executable checks of the analytic backbone: null-structure algebra,
//! commutator and Hessian identities, Sobolev-type inequalities, empirical
//! decay fits, and the bootstrap growth monitor.
//!
//! Every check produces a `CheckRecord` so the whole battery can be bundled
//! into a machine-readable `Report`.

pub mod bootstrap;
pub mod commutators;
pub mod decay;
pub mod geometry;
pub mod nullform;
pub mod sobolev;

use serde::Serialize;

use crate::error::{Error, Result};

/// One verification check: an identity, inequality, or fit, with the numbers
/// that decided it.
#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub lhs: f64,
    pub rhs: f64,
    /// Ratio, residual, slope, or exponent, depending on the check.
    pub value: f64,
    pub pass: bool,
    pub detail: String,
}

impl CheckRecord {
    pub fn new(id: &str, lhs: f64, rhs: f64, value: f64, pass: bool, detail: String) -> Self {
        CheckRecord {
            id: id.to_string(),
            lhs,
            rhs,
            value,
            pass,
            detail,
        }
    }
}

/// A bundle of checks; serialized as the report artifact.
#[derive(Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn push(&mut self, c: CheckRecord) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = CheckRecord>) {
        self.checks.extend(cs);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&CheckRecord> {
        self.checks.iter().filter(|c| !c.pass).collect()
    }
}

/// Power-law fit y ~ A x^e with its standard error.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub stderr: f64,
}

/// Least-squares fit of log y against log x. Needs at least three positive
/// samples spanning distinct x values.
pub fn fit_log_log(xs: &[f64], ys: &[f64]) -> Result<ExponentFit> {
    if xs.len() != ys.len() || xs.len() < 3 {
        return Err(Error::InsufficientRange {
            s0: xs.first().copied().unwrap_or(0.0),
            s1: xs.last().copied().unwrap_or(0.0),
        });
    }
    if xs.iter().chain(ys.iter()).any(|&v| v <= 0.0) {
        return Err(Error::InsufficientRange {
            s0: xs[0],
            s1: xs[xs.len() - 1],
        });
    }
    let n = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|v| (v - mx) * (v - mx)).sum();
    if sxx <= 0.0 {
        return Err(Error::InsufficientRange {
            s0: xs[0],
            s1: xs[xs.len() - 1],
        });
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = lx
        .iter()
        .zip(&ly)
        .map(|(a, b)| {
            let r = b - (intercept + slope * a);
            r * r
        })
        .sum();
    let dof = (xs.len() - 2).max(1) as f64;
    Ok(ExponentFit {
        exponent: slope,
        stderr: (sse / dof / sxx).sqrt(),
    })
}
