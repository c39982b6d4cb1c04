//! Piecewise-affine Orlicz function whose injection `H^Ψ → 𝔅^Ψ` is weakly
//! compact but not compact.
//!
//! Abscissae: `x_1 = 4`, `x_{n+1} = x_n³ − 2 x_n` (56, 175504, …). Values:
//! `Ψ(x) = 4x` on `[0, 4]`, `Ψ(x_n) = x_n^{r/2}`, `Ψ(2 x_n) = x_n^r`, affine in
//! between. For `r = 4` the points `x_n`, `2x_n`, `x_{n+1}` are collinear,
//! so `Ψ` is affine on each `[x_n, x_{n+1}]`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::{Family, Knot, OrliczFunction};
use crate::error::{Error, Result};
use crate::logspace::log_sub_exp;

/// Largest `n_max` whose knot values stay inside the `f64` exponent range
/// for `r = 4`.
pub const MAX_N: usize = 5;
pub const DEFAULT_N_MAX: usize = 5;
pub const DEFAULT_R: f64 = 4.0;

/// `x_1, x_2, …` exactly and as `f64`; index 0 holds `x_1`.
#[derive(Debug, Clone)]
pub struct CounterexampleSequence {
    pub exact: Vec<BigUint>,
    pub approx: Vec<f64>,
}

impl CounterexampleSequence {
    /// `x_n` (1-based).
    pub fn x(&self, n: usize) -> f64 {
        self.approx[n - 1]
    }

    pub fn x_exact(&self, n: usize) -> &BigUint {
        &self.exact[n - 1]
    }

    /// `δ_n = 2 x_{n−1} / x_n`, for `n ≥ 2`.
    pub fn delta(&self, n: usize) -> f64 {
        2.0 * self.x(n - 1) / self.x(n)
    }

    /// `δ_n` through the closed form `2 / (x_{n−1}² − 2)`.
    pub fn delta_closed_form(&self, n: usize) -> f64 {
        let p = self.x(n - 1);
        2.0 / (p * p - 2.0)
    }
}

pub fn counterexample_sequence(count: usize) -> CounterexampleSequence {
    let mut exact = Vec::with_capacity(count);
    let mut x = BigUint::from(4u32);
    for _ in 0..count {
        exact.push(x.clone());
        let two_x = &x * 2u32;
        x = &x * &x * &x - two_x;
    }
    let approx = exact.iter().map(|v| v.to_f64().unwrap_or(f64::INFINITY)).collect();
    CounterexampleSequence { exact, approx }
}

/// Builds the counterexample with knots at `x_n`, `2 x_n` for
/// `n = 1..=n_max`, closed by the knot `x_{n_max+1}` so that the whole range
/// `[x_1, x_{n_max+1}]` is evaluated exactly. Beyond that the last slope is
/// continued and flagged as extrapolated.
pub fn build_counterexample(n_max: usize, r: f64) -> Result<OrliczFunction> {
    if !(2..=MAX_N).contains(&n_max) {
        return Err(Error::InvalidFunction(format!(
            "n_max must lie in 2..={MAX_N} (knot values beyond x_{} do not fit in f64), got {n_max}",
            MAX_N + 1
        )));
    }
    if !(r >= 4.0 && r.is_finite()) {
        return Err(Error::InvalidFunction(format!("exponent r must be >= 4, got {r}")));
    }
    let seq = counterexample_sequence(n_max + 1);
    let mut knots = Vec::with_capacity(2 * n_max + 1);
    for n in 1..=n_max {
        let x = seq.x(n);
        let lx = x.ln();
        knots.push(knot(x, 0.5 * r, lx));
        knots.push(Knot { x: 2.0 * x, log_x: (2.0 * x).ln(), ..knot(x, r, lx) });
    }
    let closing = seq.x(n_max + 1);
    knots.push(knot(closing, 0.5 * r, closing.ln()));

    let (a, b) = (&knots[knots.len() - 2], &knots[knots.len() - 1]);
    let last_slope = log_sub_exp(b.log_y, a.log_y) - (b.x - a.x).ln();
    let pw = OrliczFunction::piecewise_log(knots, last_slope)?;
    let psi = pw.with_family(Family::PaperCounterexample { n_max, r }, (seq.x(1), seq.x(n_max)));
    psi.check_convexity()?;
    Ok(psi)
}

/// Knot at abscissa `x` carrying the value `base^exponent`, with `ln base = log_base`.
fn knot(base: f64, exponent: f64, log_base: f64) -> Knot {
    let y = if exponent.fract() == 0.0 { base.powi(exponent as i32) } else { base.powf(exponent) };
    Knot { x: base, log_x: log_base, log_y: exponent * log_base, y }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn recurrence_values() {
        let s = counterexample_sequence(4);
        assert_eq!(s.x_exact(2), &BigUint::from(56u32));
        assert_eq!(s.x_exact(3), &BigUint::from(175_504u32));
        assert_eq!(s.x_exact(4), &BigUint::from(175_504u64.pow(3) - 2 * 175_504));
    }

    #[test]
    fn knot_values_n_max_two() {
        let psi = build_counterexample(2, 4.0).unwrap();
        let ks = psi.as_piecewise().unwrap().knots();
        let xs: Vec<f64> = ks.iter().map(|k| k.x).collect();
        assert_eq!(&xs[..4], &[4.0, 8.0, 56.0, 112.0]);
        assert_eq!(xs[4], 175_504.0);
        for (x, y) in [(4.0, 16.0), (8.0, 256.0), (56.0, 3136.0), (112.0, 9_834_496.0)] {
            assert_relative_eq!(psi.eval(x).unwrap(), y, max_relative = 1e-14);
        }
    }

    #[test]
    fn eval_examples() {
        let psi = build_counterexample(5, 4.0).unwrap();
        assert_eq!(psi.eval(2.0).unwrap(), 8.0);
        assert_relative_eq!(psi.eval(6.0).unwrap(), 136.0, max_relative = 1e-15);
        assert_relative_eq!(psi.inverse(136.0).unwrap(), 6.0, max_relative = 1e-15);
        assert_relative_eq!(psi.inverse(256.0).unwrap(), 8.0, max_relative = 1e-15);
        assert_relative_eq!(psi.eval_log(56f64.ln()), 2.0 * 56f64.ln(), max_relative = 1e-12);
        let x4 = 175_504f64.powi(3) - 2.0 * 175_504.0;
        assert_relative_eq!(psi.ln_eval(2.0 * x4), 4.0 * x4.ln(), max_relative = 1e-14);
    }

    #[test]
    fn general_exponent() {
        let psi = build_counterexample(2, 8.0).unwrap();
        assert_relative_eq!(psi.ln_eval(56.0), 4.0 * 56f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(psi.ln_eval(112.0), 8.0 * 56f64.ln(), max_relative = 1e-14);
        assert_relative_eq!(psi.eval(2.0).unwrap(), 128.0, max_relative = 1e-14);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(build_counterexample(6, 4.0).is_err());
        assert!(build_counterexample(1, 4.0).is_err());
        assert!(build_counterexample(3, 3.0).is_err());
    }

    #[test]
    fn tail_is_flagged() {
        let psi = build_counterexample(2, 4.0).unwrap();
        assert!(!psi.ln_eval_flagged(175_504.0).extrapolated);
        assert!(psi.ln_eval_flagged(175_505.0).extrapolated);
    }

    #[test]
    fn deltas_agree() {
        let s = counterexample_sequence(4);
        assert_relative_eq!(s.delta(2), 1.0 / 7.0, max_relative = 1e-15);
        for n in 2..=4 {
            assert_relative_eq!(s.delta(n), s.delta_closed_form(n), max_relative = 1e-14);
        }
    }
}
