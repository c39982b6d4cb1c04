use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport, DEFAULT_SEED};
use crate::error::Result;
use crate::norm::{bergman_norm, hardy_norm};
use crate::orlicz::FunctionSpec;
use crate::sampled::{FunctionInput, SampledFunction};
use crate::witness::{make_kernel_squared, make_monomial, random_polynomials};

const REF: &str = "the Hardy-Orlicz to Bergman-Orlicz injection has norm 1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContractionConfig {
    pub functions: Vec<FunctionSpec>,
    pub seed: u64,
    pub random_count: usize,
    pub max_degree: usize,
    pub tol: f64,
}

impl ContractionConfig {
    pub fn with_seed(seed: u64) -> Self {
        ContractionConfig {
            functions: vec![
                FunctionSpec::Power { p: 2.0 },
                FunctionSpec::ExpLogSquared,
                FunctionSpec::PaperCounterexample { n_max: 4, r: 4.0 },
            ],
            seed,
            random_count: 50,
            max_degree: 20,
            tol: 1e-7,
        }
    }
}

impl Default for ContractionConfig {
    fn default() -> Self {
        Self::with_seed(DEFAULT_SEED)
    }
}

/// Monomials, a constant, a squared kernel, then the seeded random polynomials.
pub fn default_contraction_functions(cfg: &ContractionConfig) -> Vec<SampledFunction> {
    let mut fs: Vec<SampledFunction> = [0, 1, 5, 20].into_iter().map(make_monomial).collect();
    fs.push(SampledFunction::constant(2.0));
    fs.push(make_kernel_squared(0.125, 0.7).expect("valid width"));
    fs.extend(random_polynomials(cfg.seed, cfg.random_count, cfg.max_degree));
    fs
}

const FIXED: usize = 6;

fn describe(f: &SampledFunction, k: usize) -> String {
    match f.to_input() {
        FunctionInput::Polynomial { coeffs } if k >= FIXED => {
            format!("random polynomial #{} (degree {})", k - FIXED, coeffs.len() - 1)
        }
        inp => serde_json::to_string(&inp).unwrap_or_else(|_| format!("function #{k}")),
    }
}

pub fn suite_contraction(cfg: &ContractionConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("contraction", cfg);
    let fs = default_contraction_functions(cfg);
    for spec in &cfg.functions {
        let psi = spec.build()?;
        let label = serde_json::to_string(spec)?;
        let checks: Vec<Check> = fs
            .par_iter()
            .enumerate()
            .map(|(k, f)| -> Result<Check> {
                let h = hardy_norm(f, &psi, None)?;
                let b = bergman_norm(f, &psi);
                let mut c = Check::new(
                    format!("{label}: {}", describe(f, k)),
                    REF,
                    b.value,
                    h.result.value + cfg.tol,
                    Relation::Le,
                );
                if !b.converged || !h.result.converged {
                    c = c.failed(format!(
                        "norm not converged (bergman bracket {:?}, hardy bracket {:?})",
                        b.bracket, h.result.bracket
                    ));
                }
                Ok(c)
            })
            .collect::<Result<_>>()?;
        for c in checks {
            rep.push(c);
        }
    }
    Ok(rep)
}
