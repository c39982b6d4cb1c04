//! JSON function-spec documents, shared by the library loaders and the CLI.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::counterexample::{build_counterexample, DEFAULT_N_MAX, DEFAULT_R};
use super::{Family, OrliczFunction, Repr};
use crate::error::{Error, Result};

/// `{"family": "power", "p": 2}`, `{"family": "paper_counterexample", "n_max": 4}`,
/// `{"family": "arg_square", "inner": {...}}`, …
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionSpec {
    Power {
        p: f64,
    },
    ExpLogSquared,
    ExpMinusOne,
    PaperCounterexample {
        #[serde(default = "default_n_max")]
        n_max: usize,
        #[serde(default = "default_r")]
        r: f64,
    },
    Piecewise {
        knots: Vec<[f64; 2]>,
        tail_slope: f64,
    },
    SquareCompose {
        inner: Box<FunctionSpec>,
    },
    ArgSquare {
        inner: Box<FunctionSpec>,
    },
    ArgScale {
        inner: Box<FunctionSpec>,
        factor: f64,
    },
}

fn default_n_max() -> usize {
    DEFAULT_N_MAX
}

fn default_r() -> f64 {
    DEFAULT_R
}

impl FunctionSpec {
    pub fn build(&self) -> Result<OrliczFunction> {
        match self {
            FunctionSpec::Power { p } => OrliczFunction::power(*p),
            FunctionSpec::ExpLogSquared => Ok(OrliczFunction::exp_log_squared()),
            FunctionSpec::ExpMinusOne => Ok(OrliczFunction::exp_minus_one()),
            FunctionSpec::PaperCounterexample { n_max, r } => build_counterexample(*n_max, *r),
            FunctionSpec::Piecewise { knots, tail_slope } => {
                let ks: Vec<(f64, f64)> = knots.iter().map(|k| (k[0], k[1])).collect();
                OrliczFunction::piecewise(&ks, *tail_slope)
            }
            FunctionSpec::SquareCompose { inner } => inner.build()?.square_compose(),
            FunctionSpec::ArgSquare { inner } => inner.build()?.arg_square(),
            FunctionSpec::ArgScale { inner, factor } => inner.build()?.arg_scale(*factor),
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Spec(format!("function spec: {e}")))
    }
}

/// Accepts JSON or the shorthand `power:2`, `exp_log_squared`,
/// `exp_minus_one`, `paper_counterexample[:n_max[:r]]`.
impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Self::from_json(s);
        }
        let mut parts = s.split(':');
        let name = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let num = |i: usize| -> Result<Option<f64>> {
            args.get(i)
                .map(|a| a.parse::<f64>().map_err(|_| Error::Spec(format!("bad number {a:?} in {s:?}"))))
                .transpose()
        };
        let spec = match name {
            "power" => FunctionSpec::Power {
                p: num(0)?.ok_or_else(|| Error::Spec("power needs an exponent, e.g. power:2".into()))?,
            },
            "exp_log_squared" => FunctionSpec::ExpLogSquared,
            "exp_minus_one" => FunctionSpec::ExpMinusOne,
            "paper_counterexample" | "counterexample" => FunctionSpec::PaperCounterexample {
                n_max: num(0)?.map_or(DEFAULT_N_MAX, |v| v as usize),
                r: num(1)?.unwrap_or(DEFAULT_R),
            },
            other => return Err(Error::Spec(format!("unknown function {other:?}"))),
        };
        Ok(spec)
    }
}

impl OrliczFunction {
    /// The spec that rebuilds this function, when its family has one.
    pub fn to_spec(&self) -> Option<FunctionSpec> {
        Some(match self.family() {
            Family::Power { p } => FunctionSpec::Power { p: *p },
            Family::ExpLogSquared => FunctionSpec::ExpLogSquared,
            Family::ExpMinusOne => FunctionSpec::ExpMinusOne,
            Family::PaperCounterexample { n_max, r } => FunctionSpec::PaperCounterexample { n_max: *n_max, r: *r },
            Family::PiecewiseAffine => {
                let pw = self.as_piecewise()?;
                FunctionSpec::Piecewise {
                    knots: pw.knots().iter().map(|k| [k.x, k.y]).collect(),
                    tail_slope: pw.log_tail_slope().exp(),
                }
            }
            Family::SquareComposed { .. } | Family::ArgSquared { .. } | Family::ArgScaled { .. } => {
                return self.inner_spec();
            }
        })
    }
}

impl OrliczFunction {
    fn inner_spec(&self) -> Option<FunctionSpec> {
        Some(match &self.repr {
            Repr::SquareComposed(inner) => FunctionSpec::SquareCompose { inner: Box::new(inner.to_spec()?) },
            Repr::ArgSquared(inner) => FunctionSpec::ArgSquare { inner: Box::new(inner.to_spec()?) },
            Repr::ArgScaled(inner, c) => FunctionSpec::ArgScale { inner: Box::new(inner.to_spec()?), factor: *c },
            _ => return None,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_forms() {
        let cases = [
            r#"{"family": "power", "p": 2}"#,
            r#"{"family": "exp_log_squared"}"#,
            r#"{"family": "exp_minus_one"}"#,
            r#"{"family": "paper_counterexample", "n_max": 4, "r": 4}"#,
            r#"{"family": "piecewise", "knots": [[1, 1], [2, 3]], "tail_slope": 4}"#,
            r#"{"family": "square_compose", "inner": {"family": "power", "p": 2}}"#,
            r#"{"family": "arg_square", "inner": {"family": "paper_counterexample", "n_max": 3}}"#,
        ];
        for c in cases {
            let spec: FunctionSpec = c.parse().unwrap();
            let psi = spec.build().unwrap();
            let again = psi.to_spec().unwrap();
            assert_eq!(again.build().unwrap().ln_eval(3.0), psi.ln_eval(3.0), "{c}");
        }
    }

    #[test]
    fn shorthand() {
        assert_eq!("power:2".parse::<FunctionSpec>().unwrap(), FunctionSpec::Power { p: 2.0 });
        assert_eq!(
            "paper_counterexample:4".parse::<FunctionSpec>().unwrap(),
            FunctionSpec::PaperCounterexample { n_max: 4, r: 4.0 }
        );
        assert!("power".parse::<FunctionSpec>().is_err());
        assert!("gamma:2".parse::<FunctionSpec>().is_err());
        assert!(r#"{"family": "power"}"#.parse::<FunctionSpec>().is_err());
    }
}
