use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport};
use crate::error::Result;
use crate::norm::bergman_norm;
use crate::orlicz::FunctionSpec;
use crate::witness::{kernel_sum_constant, make_kernel_family};

const REF_SUM: &str = "boundary sum of the kernel family is at most e^2/(e-1)^2";
const REF_NORM: &str = "Bergman-Orlicz norm of each kernel is at least 1/(9 Psi^{-1}(1/h^2))";
const REF_WINDOW: &str = "each kernel is at least 1/9 on its window";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub h_grid: Vec<f64>,
    pub functions: Vec<FunctionSpec>,
    pub boundary_samples: usize,
    pub refined_samples: usize,
    pub window_points: usize,
    pub tol: f64,
    /// Relative quadrature error above which a norm is reported as under-resolved.
    pub max_rel_quad_error: f64,
}

impl Default for KernelConfig {
    fn default() -> Self {
        KernelConfig {
            h_grid: vec![0.125, 1.0 / 32.0, 1.0 / 128.0],
            functions: vec![
                FunctionSpec::Power { p: 2.0 },
                FunctionSpec::ExpLogSquared,
                FunctionSpec::PaperCounterexample { n_max: 4, r: 4.0 },
            ],
            boundary_samples: 512,
            refined_samples: 4096,
            window_points: 64,
            tol: 1e-6,
            max_rel_quad_error: 1e-6,
        }
    }
}

pub fn suite_kernel_bounds(cfg: &KernelConfig) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new("kernel", cfg);
    let bound = kernel_sum_constant();
    let psis = cfg.functions.iter().map(|s| s.build()).collect::<Result<Vec<_>>>()?;
    for &h in &cfg.h_grid {
        let fam = make_kernel_family(h)?;
        rep.push(Check::new(format!("h = {h:e}: family size N h >= 1 (N = {})", fam.n_funcs), REF_SUM, fam.n_funcs as f64 * h, 1.0, Relation::Ge));

        let coarse = fam.max_boundary_sum(cfg.boundary_samples);
        let fine = fam.max_boundary_sum(cfg.refined_samples);
        rep.push(
            Check::new(format!("h = {h:e}: sampled max of boundary sum"), REF_SUM, coarse, bound, Relation::Le).with_note(format!(
                "{} equally spaced samples (a lower estimate of the sup); {} samples give {fine:.12}",
                cfg.boundary_samples, cfg.refined_samples
            )),
        );

        let samples = [0, fam.n_funcs / 2];
        for &j in &samples {
            let u = &fam.members[j];
            let worst = fam
                .window_points(j, cfg.window_points)
                .iter()
                .map(|z| u.abs_at(*z))
                .fold(f64::INFINITY, f64::min);
            rep.push(Check::new(
                format!("h = {h:e}, j = {j}: min |u_j| over {} window points", cfg.window_points),
                REF_WINDOW,
                worst,
                1.0 / 9.0,
                Relation::Ge,
            ));
        }

        let j = 1;
        for (spec, psi) in cfg.functions.iter().zip(&psis) {
            let n = bergman_norm(&fam.members[j], psi);
            let lower = 1.0 / (9.0 * psi.inverse(1.0 / (h * h))?);
            let label = serde_json::to_string(spec)?;
            let mut c = Check::new(format!("h = {h:e}, j = {j}, {label}: Bergman norm"), REF_NORM, n.value, lower - cfg.tol, Relation::Ge);
            if !n.converged || n.quad_error_est > cfg.max_rel_quad_error * n.value {
                c = c.failed(format!(
                    "inconclusive: under-resolved quadrature (bracket {:?}, quadrature error {:e})",
                    n.bracket, n.quad_error_est
                ));
            }
            rep.push(c);
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let r = suite_kernel_bounds(&KernelConfig::default()).unwrap();
        assert!(r.overall_pass, "{}", r.to_text());
        let pw = r.checks.iter().find(|c| c.description.contains("h = 3.125e-2, j = 1, {\"family\":\"power\"")).unwrap();
        assert!((pw.rhs - (1.0 / 288.0 - 1e-6)).abs() < 1e-15);
    }
}
