//! Verification suites. Each suite is a pure function returning a
//! [`SuiteReport`] whose checks record both sides of an inequality or
//! identity, the relation tested, and the signed margin.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::serde_float;

mod carleson;
mod contraction;
mod counterexample;
mod evaluation;
mod kernel;
mod monomial;
mod order;

pub use carleson::{carleson_area, carleson_area_polar, carleson_area_quadrature, suite_carleson_window, CarlesonConfig};
pub use contraction::{default_contraction_functions, suite_contraction, ContractionConfig};
pub use counterexample::{suite_counterexample, CounterexampleConfig};
pub use evaluation::{default_evaluation_points, suite_evaluation_bounds, EvaluationConfig};
pub use kernel::{suite_kernel_bounds, KernelConfig};
pub use monomial::{suite_monomial_decay, MonomialConfig};
pub use order::{suite_order_boundedness, OrderConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs`, margin `rhs − lhs`.
    Le,
    /// `lhs ≥ rhs`, margin `lhs − rhs`.
    Ge,
    /// `|lhs − rhs| ≤ tol`, margin `tol − |lhs − rhs|`.
    Approx { tol: f64 },
    /// Exact equality; margin 0 or `-|lhs − rhs|`.
    Eq,
    /// `lhs < rhs`, margin `rhs − lhs`.
    Lt,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            Relation::Le => f.write_str("<="),
            Relation::Ge => f.write_str(">="),
            Relation::Approx { tol } => write!(f, "~= (tol {tol:e})"),
            Relation::Eq => f.write_str("=="),
            Relation::Lt => f.write_str("<"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub description: String,
    pub reference: String,
    #[serde(with = "serde_float")]
    pub lhs: f64,
    #[serde(with = "serde_float")]
    pub rhs: f64,
    pub relation: Relation,
    #[serde(with = "serde_float")]
    pub margin: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(description: impl Into<String>, reference: &str, lhs: f64, rhs: f64, relation: Relation) -> Self {
        let (margin, pass) = match relation {
            Relation::Le => (rhs - lhs, lhs <= rhs),
            Relation::Ge => (lhs - rhs, lhs >= rhs),
            Relation::Lt => (rhs - lhs, lhs < rhs),
            Relation::Approx { tol } => {
                let d = (lhs - rhs).abs();
                (tol - d, d <= tol)
            }
            Relation::Eq => (if lhs == rhs { 0.0 } else { -(lhs - rhs).abs() }, lhs == rhs),
        };
        let pass = pass && !margin.is_nan();
        Check { description: description.into(), reference: reference.into(), lhs, rhs, relation, margin, pass, note: None }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// Forces a failure, keeping the recorded values.
    pub fn failed(mut self, why: impl Into<String>) -> Self {
        self.pass = false;
        self.note = Some(why.into());
        self
    }

    /// Boolean fact recorded as `lhs = 1` against `rhs = 1`.
    pub fn flag(description: impl Into<String>, reference: &str, holds: bool) -> Self {
        Check::new(description, reference, if holds { 1.0 } else { 0.0 }, 1.0, Relation::Eq)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite_name: String,
    pub config: serde_json::Value,
    pub checks: Vec<Check>,
    pub overall_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aborted_at: Option<String>,
}

impl SuiteReport {
    pub fn new(suite_name: &str, config: &impl Serialize) -> Self {
        SuiteReport {
            suite_name: suite_name.into(),
            config: serde_json::to_value(config).unwrap_or(serde_json::Value::Null),
            checks: Vec::new(),
            overall_pass: true,
            aborted_at: None,
        }
    }

    pub fn push(&mut self, c: Check) -> bool {
        let ok = c.pass;
        self.overall_pass &= ok;
        self.checks.push(c);
        ok
    }

    /// Marks the report aborted at its first failing check, if any.
    pub fn abort_on_failure(&mut self) -> bool {
        if let Some(c) = self.checks.iter().find(|c| !c.pass) {
            self.aborted_at = Some(c.description.clone());
            return true;
        }
        false
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(
            out,
            "suite {}: {} ({}/{} checks)",
            self.suite_name,
            if self.overall_pass { "PASS" } else { "FAIL" },
            passed,
            self.checks.len()
        );
        for c in &self.checks {
            let _ = write!(
                out,
                "  [{}] {}: {:.12e} {} {:.12e} (margin {:.3e}) [{}]",
                if c.pass { "pass" } else { "FAIL" },
                c.description,
                c.lhs,
                c.relation,
                c.rhs,
                c.margin,
                c.reference
            );
            if let Some(n) = &c.note {
                let _ = write!(out, " note: {n}");
            }
            out.push('\n');
        }
        if let Some(a) = &self.aborted_at {
            let _ = writeln!(out, "  aborted at first counterinstance: {a}");
        }
        out
    }

    /// Flat rows `suite,description,lhs,relation,rhs,margin,pass`.
    pub fn write_csv<W: std::io::Write>(&self, w: &mut csv::Writer<W>) -> Result<()> {
        for c in &self.checks {
            w.write_record([
                self.suite_name.as_str(),
                c.description.as_str(),
                &c.lhs.to_string(),
                &c.relation.to_string(),
                &c.rhs.to_string(),
                &c.margin.to_string(),
                if c.pass { "true" } else { "false" },
            ])?;
        }
        Ok(())
    }
}

pub const CSV_HEADER: [&str; 7] = ["suite", "description", "lhs", "relation", "rhs", "margin", "pass"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Contraction,
    Carleson,
    Monomial,
    Kernel,
    Evaluation,
    Counterexample,
    Order,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::Contraction,
        SuiteName::Carleson,
        SuiteName::Monomial,
        SuiteName::Kernel,
        SuiteName::Evaluation,
        SuiteName::Counterexample,
        SuiteName::Order,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::Contraction => "contraction",
            SuiteName::Carleson => "carleson",
            SuiteName::Monomial => "monomial",
            SuiteName::Kernel => "kernel",
            SuiteName::Evaluation => "evaluation",
            SuiteName::Counterexample => "counterexample",
            SuiteName::Order => "order",
        }
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::Spec(format!("unknown suite {s:?}")))
    }
}

/// Shared knobs for running suites by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatteryConfig {
    pub seed: u64,
    /// Overrides the kernel suite's width grid.
    pub kernel_h: Option<Vec<f64>>,
    /// Orlicz function for the single-function suites; `None` keeps each default.
    pub function: Option<crate::FunctionSpec>,
}

impl Default for BatteryConfig {
    fn default() -> Self {
        BatteryConfig { seed: DEFAULT_SEED, kernel_h: None, function: None }
    }
}

pub const DEFAULT_SEED: u64 = 20_240_601;

pub fn run_suite(name: SuiteName, cfg: &BatteryConfig) -> Result<SuiteReport> {
    let psi = cfg.function.as_ref().map(|s| s.build()).transpose()?;
    let counter = || crate::build_counterexample(4, 4.0);
    let power2 = || crate::OrliczFunction::power(2.0);
    Ok(match name {
        SuiteName::Contraction => {
            let mut c = ContractionConfig::with_seed(cfg.seed);
            if let Some(s) = &cfg.function {
                c.functions = vec![s.clone()];
            }
            suite_contraction(&c)?
        }
        SuiteName::Carleson => suite_carleson_window(&CarlesonConfig::default()),
        SuiteName::Monomial => suite_monomial_decay(&psi.map_or_else(power2, Ok)?)?,
        SuiteName::Kernel => {
            let mut c = KernelConfig::default();
            if let Some(h) = &cfg.kernel_h {
                c.h_grid = h.clone();
            }
            if let Some(s) = &cfg.function {
                c.functions = vec![s.clone()];
            }
            suite_kernel_bounds(&c)?
        }
        SuiteName::Evaluation => {
            let p = psi.map_or_else(power2, Ok)?;
            let mut c = EvaluationConfig::for_psi(&p);
            c.seed = cfg.seed;
            suite_evaluation_bounds(&p, &c)?
        }
        SuiteName::Counterexample => suite_counterexample(&psi.map_or_else(counter, Ok)?, &CounterexampleConfig::default())?,
        SuiteName::Order => suite_order_boundedness(&psi.map_or_else(power2, Ok)?, &OrderConfig::default())?,
    })
}

/// Runs the named suites in parallel; output order follows `names`.
pub fn run_suites(names: &[SuiteName], cfg: &BatteryConfig) -> Result<Vec<SuiteReport>> {
    names.par_iter().map(|n| run_suite(*n, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn check_relations() {
        assert!(Check::new("a", "r", 1.0, 2.0, Relation::Le).pass);
        assert!(!Check::new("a", "r", 3.0, 2.0, Relation::Le).pass);
        assert!(Check::new("a", "r", 2.0, 2.0, Relation::Ge).pass);
        assert!(!Check::new("a", "r", 2.0, 2.0, Relation::Lt).pass);
        let c = Check::new("a", "r", 1.0 + 1e-9, 1.0, Relation::Approx { tol: 1e-8 });
        assert!(c.pass && (c.margin - 9e-9).abs() < 1e-15);
        assert!(!Check::new("a", "r", f64::NAN, 1.0, Relation::Le).pass);
        assert!(Check::flag("f", "r", true).pass);
        assert!(!Check::flag("f", "r", false).pass);
    }

    #[test]
    fn report_round_trip_and_text() {
        let mut r = SuiteReport::new("demo", &serde_json::json!({"k": 1}));
        r.push(Check::new("x", "ref", 1.0, f64::INFINITY, Relation::Le));
        r.push(Check::new("y", "ref", 2.0, 1.0, Relation::Le).with_note("n"));
        assert!(!r.overall_pass);
        assert!(r.abort_on_failure());
        let back = SuiteReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        let t = r.to_text();
        assert!(t.contains("suite demo: FAIL (1/2 checks)"));
        assert!(t.contains("aborted at first counterinstance: y"));
    }

    #[test]
    fn suite_names_parse() {
        for n in SuiteName::ALL {
            assert_eq!(n.as_str().parse::<SuiteName>().unwrap(), n);
        }
        assert!("bogus".parse::<SuiteName>().is_err());
    }
}
