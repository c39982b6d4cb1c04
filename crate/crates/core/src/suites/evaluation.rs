use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{carleson_area, Check, Relation, SuiteReport, DEFAULT_SEED};
use crate::error::Result;
use crate::norm::hardy_norm;
use crate::orlicz::{Family, OrliczFunction};
use crate::sampled::SampledFunction;
use crate::witness::{make_scaled_kernel, random_polynomials};

const REF_LOWER: &str = "point evaluation at z is at least Psi^{-1}(1/(1-|z|))/4 on the Hardy-Orlicz unit ball";
const REF_UPPER: &str = "point evaluation at z is at most 4 Psi^{-1}(1/(1-|z|)) on the Hardy-Orlicz unit ball";
const REF_NORM: &str = "the scaled kernels f_j lie in the Hardy-Orlicz unit ball";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationConfig {
    pub function: Family,
    pub x_points: Vec<f64>,
    pub seed: u64,
    pub random_count: usize,
    pub max_degree: usize,
    pub radii: Vec<f64>,
    pub hardy_tol: f64,
}

/// `Ψ^{-1}(10^k)` for `k = 2, 4, 6`, plus the knot 56 for the counterexample.
pub fn default_evaluation_points(psi: &OrliczFunction) -> Vec<f64> {
    let mut xs: Vec<f64> = [1e2, 1e4, 1e6].iter().filter_map(|&y| psi.inverse(y).ok()).collect();
    if matches!(psi.family(), Family::PaperCounterexample { .. }) {
        xs.push(56.0);
    }
    xs
}

impl EvaluationConfig {
    pub fn for_psi(psi: &OrliczFunction) -> Self {
        EvaluationConfig {
            function: psi.family().clone(),
            x_points: default_evaluation_points(psi),
            seed: DEFAULT_SEED,
            random_count: 20,
            max_degree: 20,
            radii: vec![0.0, 0.5, 0.9, 0.99, 0.999],
            hardy_tol: 2e-2,
        }
    }
}

pub fn suite_evaluation_bounds(psi: &OrliczFunction, cfg: &EvaluationConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("evaluation", cfg);
    let bound = |gap: f64| psi.inverse(1.0 / gap);

    for &x in &cfg.x_points {
        let f = make_scaled_kernel(psi, x)?;
        let h = (-psi.ln_eval(x)).exp();
        let norm = hardy_norm(&f, psi, None)?;
        let mut c = Check::new(format!("x_j = {x:e} (h = {h:e}): Hardy norm of f_j"), REF_NORM, norm.result.value, 1.0 + cfg.hardy_tol, Relation::Le);
        if !norm.result.converged {
            c = c.failed(format!("Hardy norm not converged, bracket {:?}", norm.result.bracket));
        }
        rep.push(c);

        let z = Complex64::new(1.0 - h, 0.0);
        let v = f.abs_at(z);
        let inv = bound(h)?;
        rep.push(
            Check::new(format!("x_j = {x:e}: |f_j(1-h)| >= Psi^{{-1}}(1/h)/4"), REF_LOWER, v, inv / 4.0, Relation::Ge)
                .with_note(format!("window area over (1-r_j)^2 = {:.6}", carleson_area(h) / (h * h))),
        );
        rep.push(Check::new(format!("x_j = {x:e}: |f_j(1-h)|/||f_j|| <= 4 Psi^{{-1}}(1/h)"), REF_UPPER, v / norm.result.value, 4.0 * inv, Relation::Le));
    }

    let unit = psi.inverse(1.0)?;
    let c = SampledFunction::constant(1.0);
    let cn = hardy_norm(&c, psi, None)?.result.value;
    rep.push(Check::new("constants at z = 0: |f(0)|/||f|| <= 4 Psi^{-1}(1)", REF_UPPER, 1.0 / cn, 4.0 * unit, Relation::Le));

    let polys = random_polynomials(cfg.seed, cfg.random_count, cfg.max_degree);
    let rows: Vec<Result<(f64, f64)>> = polys
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let n = hardy_norm(p, psi, None)?.result.value;
            let mut worst: f64 = 0.0;
            let mut at = 0.0;
            for (i, &r) in cfg.radii.iter().enumerate() {
                let z = Complex64::from_polar(r, 0.7 * k as f64 + 1.3 * i as f64);
                let ratio = p.abs_at(z) / n / (4.0 * bound(1.0 - r)?);
                if ratio > worst {
                    worst = ratio;
                    at = r;
                }
            }
            Ok((worst, at))
        })
        .collect();
    for (k, row) in rows.into_iter().enumerate() {
        let (worst, at) = row?;
        rep.push(
            Check::new(format!("random polynomial #{k}: max of |f(z)|/(4 ||f|| Psi^{{-1}}(1/(1-|z|)))"), REF_UPPER, worst, 1.0, Relation::Le)
                .with_note(format!("attained at |z| = {at}")),
        );
    }
    Ok(rep)
}
