use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("slice parameter s = {0} is below the foliation start s = 2")]
    SliceBelowStart(f64),
    #[error("point (t = {t}, x = {x}) lies below the initial slice t = T(2, x)")]
    PointBelowFoliation { t: f64, x: f64 },
    #[error("null frame is undefined within {r_min} of the origin (x = {x})")]
    NullFrameAtOrigin { x: f64, r_min: f64 },
    #[error("window holds {have} time levels, {need} required")]
    InsufficientWindow { have: usize, need: usize },
    #[error("stencil at (t = {t}, x = {x}) leaves the computed domain")]
    StencilOutOfDomain { t: f64, x: f64 },
    #[error("stored history does not cover the slice s = {0}")]
    WindowDoesNotCoverSlice(f64),
    #[error("field support reaches the grid edge (|{field}| = {value:.3e} at x = {x})")]
    SupportTruncated { field: &'static str, value: f64, x: f64 },
    #[error("history covers t in [{have0}, {have1}], need [{need0}, {need1}]")]
    HistoryTooShort { have0: f64, have1: f64, need0: f64, need1: f64 },
    #[error("dt = {dt} violates the CFL limit {limit}")]
    CflViolation { dt: f64, limit: f64 },
    #[error("non-finite field value at t = {t}, x = {x}")]
    NonFiniteField { t: f64, x: f64 },
    #[error("domain halfwidth {have} is below the required {need}")]
    DomainTooSmall { have: f64, need: f64 },
    #[error("data decay power p = {p} must exceed gamma + 1 = {bound}")]
    WeightNotIntegrable { p: f64, bound: f64 },
    #[error("run spans s in [{s0}, {s1}]; an exponent fit needs at least a factor 2")]
    InsufficientRange { s0: f64, s1: f64 },
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
