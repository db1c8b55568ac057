use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Domain(String),
    #[error("series vanishes identically")]
    ZeroSeries,
    #[error("not Morse: {0}")]
    NotMorse(String),
    #[error("vector {0:?} is not a primitive generator")]
    NotPrimitive(Vec<i64>),
    #[error("point lies outside the unit action ball (|y| = {0})")]
    OutsideBall(f64),
    #[error("energy {energy} outside region interval ({lo}, {hi})")]
    EnergyOutOfRange { energy: f64, lo: f64, hi: f64 },
    #[error("action {action} outside profile range [{lo}, {hi}]")]
    ActionOutOfRange { action: f64, lo: f64, hi: f64 },
    #[error("turning point bracketing failed near {0}")]
    Bracketing(f64),
    #[error("quadrature did not converge (estimated error {0:e})")]
    Quadrature(f64),
    #[error("ill-conditioned regression: {0}")]
    IllConditioned(String),
    #[error("derivative noise above tolerance: {0}")]
    DerivativeNoise(String),
    #[error("region {0} is not an inner region")]
    NotInner(usize),
    #[error("no non-degeneracy certificate up to order {0}")]
    NoCertificate(usize),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("log-ring degree cap exceeded: {0}")]
    DegreeOverflow(String),
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
