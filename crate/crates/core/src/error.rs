use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The linear-domain value does not fit in an `f64`; use `eval_log`.
    #[error("Ψ({x}) overflows f64 (ln Ψ = {log_value}); use the log-domain evaluator")]
    Overflow { x: f64, log_value: f64 },

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("invalid Orlicz function: {0}")]
    InvalidFunction(String),

    /// A growth grid reached past the last trusted knot of a piecewise function.
    #[error("grid point x = {x} (argument {arg}) lies in the extrapolated tail beyond {last_knot}")]
    Extrapolated { x: f64, arg: f64, last_knot: f64 },

    #[error("invalid grid: {0}")]
    Grid(String),

    #[error("malformed spec: {0}")]
    Spec(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
