//! Analytic functions on the closed unit disk that the norm engine integrates.

use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orlicz::OrliczFunction;

/// A point of the closed disk in polar form. `gap = 1 − r` is carried
/// separately so that kernels peaking at the boundary keep full relative
/// accuracy; the angle is `center + phi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Polar {
    pub r: f64,
    pub gap: f64,
    pub center: f64,
    pub phi: f64,
}

impl Polar {
    pub fn from_z(z: Complex64) -> Self {
        let r = z.norm();
        Polar { r, gap: 1.0 - r, center: 0.0, phi: z.arg() }
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(self.r, self.center + self.phi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampledFunction {
    Polynomial { coeffs: Vec<Complex64> },
    Monomial { n: u32 },
    /// `u(z) = h² / (1 − (1−h) ξ̄ z)²`, `ξ = e^{i xi_angle}`.
    KernelSquared { h: f64, xi_angle: f64 },
    /// `f(z) = x_j ((1−r_j)/(1 − r_j ξ̄ z))²`, stored with `delta = 1 − r_j`.
    ScaledKernel { x_j: f64, delta: f64, xi_angle: f64 },
    /// `S(z) = 4 Ψ^{-1}(1/(1−|z|))`.
    EvaluationEnvelope { psi: OrliczFunction },
}

/// `(1 − q)² + 4q sin²(ψ/2)` for `q = (1−a)(1−b)`, i.e. `|1 − q e^{iψ}|²`.
fn kernel_den_sq(a: f64, b: f64, psi: f64) -> f64 {
    let one_minus_q = a + b - a * b;
    let q = (1.0 - a) * (1.0 - b);
    let s = (0.5 * psi).sin();
    one_minus_q * one_minus_q + 4.0 * q * s * s
}

impl SampledFunction {
    pub fn constant(c: f64) -> Self {
        SampledFunction::Polynomial { coeffs: vec![Complex64::new(c, 0.0)] }
    }

    /// Multiplies by `λ` where the form allows it exactly.
    pub fn scaled(&self, lambda: f64) -> Option<Self> {
        match self {
            SampledFunction::Polynomial { coeffs } => {
                Some(SampledFunction::Polynomial { coeffs: coeffs.iter().map(|c| c * lambda).collect() })
            }
            SampledFunction::ScaledKernel { x_j, delta, xi_angle } if lambda > 0.0 => {
                Some(SampledFunction::ScaledKernel { x_j: x_j * lambda, delta: *delta, xi_angle: *xi_angle })
            }
            _ => None,
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            SampledFunction::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c)
            }
            SampledFunction::Monomial { n } => z.powu(*n),
            SampledFunction::KernelSquared { h, xi_angle } => {
                let w = Complex64::from_polar(1.0 - h, -xi_angle) * z;
                let d = Complex64::new(1.0, 0.0) - w;
                Complex64::new(h * h, 0.0) / (d * d)
            }
            SampledFunction::ScaledKernel { x_j, delta, xi_angle } => {
                let w = Complex64::from_polar(1.0 - delta, -xi_angle) * z;
                let d = Complex64::new(1.0, 0.0) - w;
                Complex64::new(x_j * delta * delta, 0.0) / (d * d)
            }
            SampledFunction::EvaluationEnvelope { .. } => Complex64::new(self.abs_polar(&Polar::from_z(z)), 0.0),
        }
    }

    pub fn abs_at(&self, z: Complex64) -> f64 {
        match self {
            SampledFunction::Polynomial { .. } | SampledFunction::Monomial { .. } => self.eval(z).norm(),
            _ => self.abs_polar(&Polar::from_z(z)),
        }
    }

    /// `|f|` at a polar point, accurate near the boundary.
    pub fn abs_polar(&self, p: &Polar) -> f64 {
        match self {
            SampledFunction::Polynomial { coeffs } if coeffs.len() == 1 => coeffs[0].norm(),
            SampledFunction::Polynomial { .. } => self.eval(p.z()).norm(),
            SampledFunction::Monomial { n } => p.r.powi(*n as i32),
            SampledFunction::KernelSquared { h, xi_angle } => {
                let psi = (p.center - xi_angle) + p.phi;
                h * h / kernel_den_sq(*h, p.gap, psi)
            }
            SampledFunction::ScaledKernel { x_j, delta, xi_angle } => {
                let psi = (p.center - xi_angle) + p.phi;
                x_j * delta * delta / kernel_den_sq(*delta, p.gap, psi)
            }
            SampledFunction::EvaluationEnvelope { psi } => {
                if p.gap <= 0.0 {
                    f64::INFINITY
                } else {
                    4.0 * psi.inverse_log(-p.gap.ln()).exp()
                }
            }
        }
    }

    /// `|f|` depends on `|z|` only.
    pub fn is_radial(&self) -> bool {
        match self {
            SampledFunction::Polynomial { coeffs } => coeffs.iter().skip(1).all(|c| *c == Complex64::new(0.0, 0.0)),
            SampledFunction::Monomial { .. } | SampledFunction::EvaluationEnvelope { .. } => true,
            _ => false,
        }
    }

    /// `(width, angle)` of a boundary peak, if the form has one.
    pub fn peak(&self) -> Option<(f64, f64)> {
        match self {
            SampledFunction::KernelSquared { h, xi_angle } => Some((*h, *xi_angle)),
            SampledFunction::ScaledKernel { delta, xi_angle, .. } => Some((*delta, *xi_angle)),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<usize> {
        match self {
            SampledFunction::Polynomial { coeffs } => Some(coeffs.len().saturating_sub(1)),
            SampledFunction::Monomial { n } => Some(*n as usize),
            _ => None,
        }
    }

    /// Bounded on the closed disk (every form except the envelope).
    pub fn is_bounded(&self) -> bool {
        !matches!(self, SampledFunction::EvaluationEnvelope { .. })
    }

    pub fn to_input(&self) -> FunctionInput {
        match self {
            SampledFunction::Polynomial { coeffs } => {
                FunctionInput::Polynomial { coeffs: coeffs.iter().map(|c| [c.re, c.im]).collect() }
            }
            SampledFunction::Monomial { n } => FunctionInput::Monomial { n: *n },
            SampledFunction::KernelSquared { h, xi_angle } => FunctionInput::KernelSquared { h: *h, xi_angle: *xi_angle },
            SampledFunction::ScaledKernel { x_j, xi_angle, .. } => {
                FunctionInput::ScaledKernel { x_j: *x_j, xi_angle: *xi_angle }
            }
            SampledFunction::EvaluationEnvelope { .. } => FunctionInput::EvaluationEnvelope,
        }
    }
}

/// Serializable description of a sampled function. Forms that depend on an
/// Orlicz function (`scaled_kernel`, `evaluation_envelope`) are resolved
/// against the one passed to [`FunctionInput::build`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case", deny_unknown_fields)]
pub enum FunctionInput {
    Monomial { n: u32 },
    Polynomial { coeffs: Vec<[f64; 2]> },
    Constant { value: f64 },
    KernelSquared { h: f64, #[serde(default)] xi_angle: f64 },
    ScaledKernel { x_j: f64, #[serde(default)] xi_angle: f64 },
    EvaluationEnvelope,
}

impl FunctionInput {
    pub fn build(&self, psi: &OrliczFunction) -> Result<SampledFunction> {
        Ok(match self {
            FunctionInput::Monomial { n } => crate::witness::make_monomial(*n),
            FunctionInput::Polynomial { coeffs } => {
                if coeffs.is_empty() {
                    return Err(Error::Spec("polynomial needs at least one coefficient".into()));
                }
                SampledFunction::Polynomial { coeffs: coeffs.iter().map(|&[re, im]| Complex64::new(re, im)).collect() }
            }
            FunctionInput::Constant { value } => SampledFunction::constant(*value),
            FunctionInput::KernelSquared { h, xi_angle } => crate::witness::make_kernel_squared(*h, *xi_angle)?,
            FunctionInput::ScaledKernel { x_j, xi_angle } => {
                crate::witness::make_scaled_kernel(psi, *x_j)?.rotated(*xi_angle)
            }
            FunctionInput::EvaluationEnvelope => SampledFunction::EvaluationEnvelope { psi: psi.clone() },
        })
    }
}

impl SampledFunction {
    /// Rotates a kernel's peak to `e^{i angle}`; other forms are unchanged.
    pub fn rotated(self, angle: f64) -> Self {
        match self {
            SampledFunction::KernelSquared { h, .. } => SampledFunction::KernelSquared { h, xi_angle: angle },
            SampledFunction::ScaledKernel { x_j, delta, .. } => SampledFunction::ScaledKernel { x_j, delta, xi_angle: angle },
            other => other,
        }
    }
}

fn parse_kv(body: &str) -> Result<Vec<(String, f64)>> {
    body.split(',')
        .filter(|s| !s.is_empty())
        .map(|kv| {
            let (k, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::Spec(format!("expected key=value, got '{kv}'")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::Spec(format!("bad number '{v}'")))?;
            Ok((k.trim().to_string(), v))
        })
        .collect()
}

/// Accepts the JSON form or shorthands: `monomial:3`, `const:2.5`,
/// `poly:1,0,2` (real coefficients, constant term first),
/// `kernel_squared:h=0.01[,xi=0.5]`, `scaled_kernel:x=56[,xi=0]`,
/// `evaluation_envelope`.
impl FromStr for FunctionInput {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return Ok(serde_json::from_str(s)?);
        }
        let (name, body) = s.split_once(':').unwrap_or((s, ""));
        let num = |b: &str| -> Result<f64> { b.trim().parse().map_err(|_| Error::Spec(format!("bad number '{b}' in '{s}'"))) };
        let lookup = |kv: &[(String, f64)], keys: &[&str]| kv.iter().find(|(k, _)| keys.contains(&k.as_str())).map(|p| p.1);
        match name {
            "monomial" => Ok(FunctionInput::Monomial { n: body.trim().parse().map_err(|_| Error::Spec(format!("bad degree in '{s}'")))? }),
            "const" | "constant" => Ok(FunctionInput::Constant { value: num(body)? }),
            "poly" | "polynomial" => Ok(FunctionInput::Polynomial {
                coeffs: body.split(',').map(|c| num(c).map(|re| [re, 0.0])).collect::<Result<_>>()?,
            }),
            "kernel_squared" => {
                let kv = parse_kv(body)?;
                Ok(FunctionInput::KernelSquared {
                    h: lookup(&kv, &["h"]).ok_or_else(|| Error::Spec("kernel_squared needs h=".into()))?,
                    xi_angle: lookup(&kv, &["xi", "xi_angle"]).unwrap_or(0.0),
                })
            }
            "scaled_kernel" => {
                let kv = parse_kv(body)?;
                Ok(FunctionInput::ScaledKernel {
                    x_j: lookup(&kv, &["x", "x_j"]).ok_or_else(|| Error::Spec("scaled_kernel needs x=".into()))?,
                    xi_angle: lookup(&kv, &["xi", "xi_angle"]).unwrap_or(0.0),
                })
            }
            "evaluation_envelope" | "envelope" => Ok(FunctionInput::EvaluationEnvelope),
            _ => Err(Error::Spec(format!("unknown function input '{s}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_polar_matches_complex() {
        let u = SampledFunction::KernelSquared { h: 0.1, xi_angle: 0.7 };
        for &(r, t) in &[(0.3, 0.1), (0.95, 0.72), (0.999, -2.0), (1.0, 0.69)] {
            let z = Complex64::from_polar(r, t);
            let direct = u.eval(z).norm();
            let polar = u.abs_polar(&Polar { r, gap: 1.0 - r, center: 0.7, phi: t - 0.7 });
            assert!((direct - polar).abs() <= 1e-13 * direct, "{direct} {polar}");
        }
    }

    #[test]
    fn scaled_kernel_tiny_delta() {
        let f = SampledFunction::ScaledKernel { x_j: 1e5, delta: 1e-10, xi_angle: 0.0 };
        let p = Polar { r: 1.0, gap: 0.0, center: 0.0, phi: 0.0 };
        assert!((f.abs_polar(&p) - 1e5).abs() < 1e-6);
    }

    #[test]
    fn shorthands() {
        assert_eq!("monomial:3".parse::<FunctionInput>().unwrap(), FunctionInput::Monomial { n: 3 });
        assert_eq!("const:3".parse::<FunctionInput>().unwrap(), FunctionInput::Constant { value: 3.0 });
        assert_eq!(
            "kernel_squared:h=0.03125".parse::<FunctionInput>().unwrap(),
            FunctionInput::KernelSquared { h: 0.03125, xi_angle: 0.0 }
        );
        let j: FunctionInput = r#"{"form": "polynomial", "coeffs": [[1, 0], [0, 2]]}"#.parse().unwrap();
        assert_eq!(j, FunctionInput::Polynomial { coeffs: vec![[1.0, 0.0], [0.0, 2.0]] });
        assert!("bogus:1".parse::<FunctionInput>().is_err());
        assert!(r#"{"form": "monomial", "n": 1, "extra": 2}"#.parse::<FunctionInput>().is_err());
    }

    #[test]
    fn envelope_is_radial_and_increasing() {
        let psi = OrliczFunction::power(2.0).unwrap();
        let s = SampledFunction::EvaluationEnvelope { psi };
        let a = s.abs_at(Complex64::new(0.5, 0.0));
        let b = s.abs_at(Complex64::new(0.0, 0.5));
        assert!((a - b).abs() < 1e-12);
        assert!((a - 4.0 * 2f64.sqrt()).abs() < 1e-12);
        assert!(s.abs_at(Complex64::new(0.9, 0.0)) > a);
    }
}
