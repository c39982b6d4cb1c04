//! Orlicz-function calculus, Luxemburg norms on the unit circle and disk, and
//! numerical diagnostics for the canonical injection from the Hardy–Orlicz
//! space `H^Ψ` into the Bergman–Orlicz space `𝔅^Ψ`.

pub mod cli;
pub mod error;
pub mod growth;
pub mod logspace;
pub mod norm;
pub mod orlicz;
pub mod quadrature;
pub mod sampled;
pub mod serde_float;
pub mod suites;
pub mod witness;

pub use error::{Error, Result};
pub use orlicz::{build_counterexample, FunctionSpec, OrliczFunction};
