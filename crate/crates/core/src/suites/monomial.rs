use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport};
use crate::error::Result;
use crate::norm::{bergman_norm, hardy_norm};
use crate::orlicz::{Family, OrliczFunction};
use crate::witness::make_monomial;

const REF_DECAY: &str = "monomials tend to 0 in the Bergman-Orlicz space";
const REF_HARDY: &str = "monomials keep Hardy-Orlicz norm 1/Psi^{-1}(1)";
const REF_CLOSED: &str = "closed-form power-family Bergman norm of z^n";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonomialConfig {
    pub function: Family,
    pub decay_degrees: Vec<u32>,
    pub max_degree: u32,
    pub tol: f64,
}

/// Power-family Bergman norm `(2 / (np + 2))^{1/p}` of `z^n`.
fn power_bergman(p: f64, n: u32) -> f64 {
    (2.0 / (n as f64 * p + 2.0)).powf(1.0 / p)
}

pub fn suite_monomial_decay(psi: &OrliczFunction) -> Result<SuiteReport> {
    let cfg = MonomialConfig {
        function: psi.family().clone(),
        decay_degrees: (0..=8).map(|k| 1 << k).collect(),
        max_degree: 256,
        tol: 1e-8,
    };
    let mut rep = SuiteReport::new("monomial", &cfg);
    let unit = 1.0 / psi.inverse(1.0)?;
    let power = match psi.family() {
        Family::Power { p } => Some(*p),
        _ => None,
    };

    let mut prev = f64::INFINITY;
    for &n in &cfg.decay_degrees {
        let f = make_monomial(n);
        let h = hardy_norm(&f, psi, None)?;
        rep.push(Check::new(
            format!("n = {n}: Hardy norm"),
            REF_HARDY,
            h.result.value,
            unit,
            Relation::Approx { tol: cfg.tol * unit.max(1.0) },
        ));
        let b = bergman_norm(&f, psi);
        let mut c = Check::new(format!("n = {n}: Bergman norm strictly below previous degree"), REF_DECAY, b.value, prev, Relation::Lt);
        if !b.converged {
            c = c.failed("Bergman norm did not converge");
        }
        rep.push(c);
        prev = b.value;
    }
    if power == Some(2.0) {
        rep.push(Check::new("n = 256: Bergman norm below 0.1", REF_DECAY, prev, 0.1, Relation::Lt));
    }

    if let Some(p) = power {
        for n in 0..=cfg.max_degree {
            let b = bergman_norm(&make_monomial(n), psi);
            let want = power_bergman(p, n);
            rep.push(Check::new(format!("n = {n}: Bergman closed form"), REF_CLOSED, b.value, want, Relation::Approx { tol: cfg.tol }));
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_counterexample;

    #[test]
    fn power_two_dichotomy() {
        let r = suite_monomial_decay(&OrliczFunction::power(2.0).unwrap()).unwrap();
        assert!(r.overall_pass, "{}", r.to_text());
        assert_eq!(r.checks.len(), 9 * 2 + 1 + 257);
        assert!((power_bergman(2.0, 255) - 0.0625).abs() < 1e-15);
    }

    #[test]
    fn other_functions() {
        for psi in [OrliczFunction::power(4.0).unwrap(), OrliczFunction::exp_log_squared(), build_counterexample(4, 4.0).unwrap()] {
            let r = suite_monomial_decay(&psi).unwrap();
            assert!(r.overall_pass, "{}", r.to_text());
        }
    }
}
