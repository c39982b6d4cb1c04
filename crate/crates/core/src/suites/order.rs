use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport};
use crate::error::Result;
use crate::growth::{check_condition, Condition, GrowthSampleGrid, Holds};
use crate::norm::{default_t_grid, morse_transue_evidence, weak_tail_check, MembershipVerdict};
use crate::orlicz::{Family, OrliczFunction};
use crate::quadrature::MeasureDomain;
use crate::sampled::SampledFunction;

const REF_WEAK: &str = "the injection is always order bounded into weak L^Psi";
const REF_LOWER: &str = "the envelope tail measure is at least of order 1/Psi(4t)";
const REF_MT: &str = "the injection is never order bounded into the Morse-Transue space";
const REF_D1: &str = "under Delta^1 the Orlicz space and its weak version coincide";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderConfig {
    pub c_pass: f64,
    pub c_fail: f64,
    /// `None` picks [`default_t_grid`].
    pub t_grid: Option<Vec<f64>>,
    pub mt_c_grid: Vec<f64>,
}

impl Default for OrderConfig {
    fn default() -> Self {
        OrderConfig { c_pass: 0.125, c_fail: 4.0, t_grid: None, mt_c_grid: vec![100.0, 10.0, 4.0, 1.0, 0.1, 0.01] }
    }
}

#[derive(Serialize)]
struct Recorded<'a> {
    function: &'a Family,
    c_pass: f64,
    c_fail: f64,
    t_grid: &'a [f64],
    mt_c_grid: &'a [f64],
}

pub fn suite_order_boundedness(psi: &OrliczFunction, cfg: &OrderConfig) -> Result<SuiteReport> {
    let t_grid = cfg.t_grid.clone().unwrap_or_else(|| default_t_grid(psi));
    let mut rep = SuiteReport::new(
        "order",
        &Recorded { function: psi.family(), c_pass: cfg.c_pass, c_fail: cfg.c_fail, t_grid: &t_grid, mt_c_grid: &cfg.mt_c_grid },
    );
    let env = SampledFunction::EvaluationEnvelope { psi: psi.clone() };
    let disk = MeasureDomain::disk();
    let window = format!("t in [{:e}, {:e}]", t_grid[0], t_grid[t_grid.len() - 1]);

    let pass = weak_tail_check(&env, psi, &disk, cfg.c_pass, &t_grid)?;
    let worst = pass.rows.iter().filter(|r| !r.small_t_exempt).map(|r| r.log_bound - r.log_measure).fold(f64::INFINITY, f64::min);
    rep.push(
        Check::flag(format!("c = {}: envelope tail below 1/Psi(ct) for {window}", cfg.c_pass), REF_WEAK, pass.all_pass)
            .with_note(format!("min log margin {worst:e}; largest passing c {:?}", pass.largest_passing_c)),
    );

    let fail = weak_tail_check(&env, psi, &disk, cfg.c_fail, &t_grid)?;
    let best = fail.rows.iter().filter(|r| !r.small_t_exempt).map(|r| r.log_measure - r.log_bound).fold(f64::INFINITY, f64::min);
    rep.push(
        Check::flag(format!("c = {}: envelope tail above 1/Psi(ct) for {window}", cfg.c_fail), REF_LOWER, fail.all_fail)
            .with_note(format!("min log excess {best:e}")),
    );

    let mt = morse_transue_evidence(&env, psi, &disk, &cfg.mt_c_grid)?;
    let growing: Vec<String> = mt
        .rows
        .iter()
        .filter(|r| r.trend == crate::norm::RefinementTrend::Growing)
        .map(|r| r.c.to_string())
        .collect();
    rep.push(
        Check::flag("envelope modular grows under radial refinement", REF_MT, mt.verdict == MembershipVerdict::Divergence)
            .with_note(format!("levels {:?}; growing at c in [{}]", mt.levels, growing.join(", "))),
    );

    let d1 = check_condition(psi, Condition::Delta1, &GrowthSampleGrid::default_for(psi))?;
    if d1.holds == Holds::Yes {
        rep.push(Check::new("Delta^1 evidence: weak and strong classes coincide", REF_D1, 1.0, 1.0, Relation::Eq).with_note(format!(
            "alpha = {:?}",
            d1.parameter
        )));
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_counterexample;

    #[test]
    fn power_and_counterexample() {
        for psi in [OrliczFunction::power(2.0).unwrap(), build_counterexample(4, 4.0).unwrap()] {
            let r = suite_order_boundedness(&psi, &OrderConfig::default()).unwrap();
            assert!(r.overall_pass, "{}", r.to_text());
            assert_eq!(r.checks.len(), 3);
        }
    }

    #[test]
    fn delta_one_flag() {
        let r = suite_order_boundedness(&OrliczFunction::exp_minus_one(), &OrderConfig::default()).unwrap();
        assert_eq!(r.checks.len(), 4, "{}", r.to_text());
    }
}
