//! Orlicz functions: convex, non-decreasing `Ψ: [0, ∞) → [0, ∞)` with `Ψ(0) = 0`.
//!
//! Closed-form families, piecewise-affine constructions (including the
//! counterexample built in [`counterexample`]) and the compositions
//! `[Ψ(t)]²`, `Ψ(t²)` and `Ψ(ct)`. Every function can be evaluated in the log
//! domain, so values far outside the `f64` range stay usable.

pub mod counterexample;
pub mod piecewise;
mod spec;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logspace::{log_add_exp, log_exp_m1, log_sub_exp};
pub use counterexample::{build_counterexample, counterexample_sequence, CounterexampleSequence};
pub use piecewise::{Knot, Piecewise};
pub use spec::FunctionSpec;

/// Family metadata, reported alongside every result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Power { p: f64 },
    /// `exp([ln(x + 1)]²) − 1`.
    ExpLogSquared,
    /// `e^x − 1`.
    ExpMinusOne,
    PiecewiseAffine,
    PaperCounterexample { n_max: usize, r: f64 },
    SquareComposed { inner: Box<Family> },
    ArgSquared { inner: Box<Family> },
    ArgScaled { inner: Box<Family>, factor: f64 },
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Power(f64),
    ExpLogSquared,
    ExpMinusOne,
    Piecewise(Piecewise),
    SquareComposed(Box<OrliczFunction>),
    ArgSquared(Box<OrliczFunction>),
    ArgScaled(Box<OrliczFunction>, f64),
}

/// `ln Ψ(x)` together with whether `x` fell in an extrapolated tail.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub log_y: f64,
    pub extrapolated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OrliczFunction {
    family: Family,
    repr: Repr,
    domain_hint: (f64, f64),
}

/// Relative tolerance of the chord-slope convexity check.
pub const TOL_CONVEX: f64 = 1e-9;
const CONVEXITY_POINTS: usize = 200;

impl OrliczFunction {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidFunction(format!("power exponent must be >= 1, got {p}")));
        }
        Ok(OrliczFunction {
            family: Family::Power { p },
            repr: Repr::Power(p),
            domain_hint: (1e-6, 1e6),
        })
    }

    pub fn exp_log_squared() -> Self {
        OrliczFunction {
            family: Family::ExpLogSquared,
            repr: Repr::ExpLogSquared,
            domain_hint: (1e-6, 1e12),
        }
    }

    pub fn exp_minus_one() -> Self {
        OrliczFunction {
            family: Family::ExpMinusOne,
            repr: Repr::ExpMinusOne,
            domain_hint: (1e-6, 1e2),
        }
    }

    /// Piecewise-affine function through `knots` (linear coordinates), linear
    /// from the origin to the first knot, affine with `tail_slope` afterwards.
    /// A leading `(0, 0)` knot is accepted and dropped.
    pub fn piecewise(knots: &[(f64, f64)], tail_slope: f64) -> Result<Self> {
        let ks: Vec<Knot> = knots
            .iter()
            .filter(|&&(x, y)| !(x == 0.0 && y == 0.0))
            .map(|&(x, y)| Knot::from_linear(x, y))
            .collect();
        Self::piecewise_log(ks, tail_slope.ln())
    }

    pub fn piecewise_log(knots: Vec<Knot>, log_tail_slope: f64) -> Result<Self> {
        let pw = Piecewise::new(knots, log_tail_slope)?;
        let hint = (pw.knots()[0].x, pw.last_knot().x);
        Ok(OrliczFunction {
            family: Family::PiecewiseAffine,
            repr: Repr::Piecewise(pw),
            domain_hint: hint,
        })
    }

    pub(crate) fn with_family(mut self, family: Family, domain_hint: (f64, f64)) -> Self {
        self.family = family;
        self.domain_hint = domain_hint;
        self
    }

    /// `t ↦ [Ψ(t)]²`.
    pub fn square_compose(&self) -> Result<Self> {
        let f = OrliczFunction {
            family: Family::SquareComposed { inner: Box::new(self.family.clone()) },
            repr: Repr::SquareComposed(Box::new(self.clone())),
            domain_hint: self.domain_hint,
        };
        f.check_convexity()?;
        Ok(f)
    }

    /// `t ↦ Ψ(t²)`.
    pub fn arg_square(&self) -> Result<Self> {
        let (lo, hi) = self.domain_hint;
        let f = OrliczFunction {
            family: Family::ArgSquared { inner: Box::new(self.family.clone()) },
            repr: Repr::ArgSquared(Box::new(self.clone())),
            domain_hint: (lo.sqrt(), hi.sqrt()),
        };
        f.check_convexity()?;
        Ok(f)
    }

    /// `t ↦ Ψ(c t)` for `c > 0`.
    pub fn arg_scale(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0 && factor.is_finite()) {
            return Err(Error::InvalidFunction(format!("scale factor must be positive, got {factor}")));
        }
        let (lo, hi) = self.domain_hint;
        Ok(OrliczFunction {
            family: Family::ArgScaled { inner: Box::new(self.family.clone()), factor },
            repr: Repr::ArgScaled(Box::new(self.clone()), factor),
            domain_hint: (lo / factor, hi / factor),
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// Range over which evaluation is exact and trusted.
    pub fn domain_hint(&self) -> (f64, f64) {
        self.domain_hint
    }

    /// The underlying piecewise representation, if this function is one.
    pub fn as_piecewise(&self) -> Option<&Piecewise> {
        match &self.repr {
            Repr::Piecewise(p) => Some(p),
            _ => None,
        }
    }

    /// Breakpoints in this function's own argument (compositions transform
    /// the inner knots accordingly).
    pub fn knot_abscissae(&self) -> Vec<f64> {
        match &self.repr {
            Repr::Piecewise(p) => p.knots().iter().map(|k| k.x).collect(),
            Repr::SquareComposed(inner) => inner.knot_abscissae(),
            Repr::ArgSquared(inner) => inner.knot_abscissae().into_iter().map(f64::sqrt).collect(),
            Repr::ArgScaled(inner, c) => inner.knot_abscissae().into_iter().map(|x| x / c).collect(),
            _ => Vec::new(),
        }
    }

    /// Largest argument that is not extrapolated (`inf` for closed forms).
    pub fn trusted_limit(&self) -> f64 {
        match &self.repr {
            Repr::Piecewise(p) => p.last_knot().x,
            Repr::SquareComposed(inner) => inner.trusted_limit(),
            Repr::ArgSquared(inner) => inner.trusted_limit().sqrt(),
            Repr::ArgScaled(inner, c) => inner.trusted_limit() / c,
            _ => f64::INFINITY,
        }
    }

    pub fn is_extrapolated(&self, x: f64) -> bool {
        x > self.trusted_limit()
    }

    /// `Ψ(x)` in the linear domain.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0 && x.is_finite()) {
            return Err(Error::Domain(format!("Ψ needs a finite x >= 0, got {x}")));
        }
        let y = self.eval_unchecked(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::Overflow { x, log_value: self.ln_eval(x) })
        }
    }

    /// `Ψ(x)` with `+inf` on overflow.
    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match &self.repr {
            Repr::Power(p) => power(x, *p),
            Repr::ExpLogSquared => {
                let l = x.ln_1p();
                (l * l).exp_m1()
            }
            Repr::ExpMinusOne => x.exp_m1(),
            Repr::Piecewise(pw) => pw.eval_linear(x).0,
            Repr::SquareComposed(inner) => {
                let y = inner.eval_unchecked(x);
                y * y
            }
            Repr::ArgSquared(inner) => inner.eval_unchecked(x * x),
            Repr::ArgScaled(inner, c) => inner.eval_unchecked(c * x),
        }
    }

    /// `ln Ψ(e^{log_x})`.
    pub fn eval_log(&self, log_x: f64) -> f64 {
        self.eval_log_flagged(log_x).log_y
    }

    pub fn eval_log_flagged(&self, log_x: f64) -> LogValue {
        self.log_at(log_x.exp(), log_x)
    }

    /// `ln Ψ(x)` from a linear argument; avoids the `exp(ln x)` round trip so
    /// knot abscissae hit their stored values exactly.
    pub fn ln_eval(&self, x: f64) -> f64 {
        self.ln_eval_flagged(x).log_y
    }

    pub fn ln_eval_flagged(&self, x: f64) -> LogValue {
        self.log_at(x, x.ln())
    }

    fn log_at(&self, x: f64, log_x: f64) -> LogValue {
        let plain = |log_y| LogValue { log_y, extrapolated: false };
        if log_x == f64::NEG_INFINITY {
            return plain(f64::NEG_INFINITY);
        }
        match &self.repr {
            Repr::Power(p) => plain(p * log_x),
            Repr::ExpLogSquared => {
                // ln(1 + x) computed for any magnitude of x.
                let l = if log_x < 0.0 { x.ln_1p() } else { log_add_exp(0.0, log_x) };
                plain(log_exp_m1(l * l))
            }
            Repr::ExpMinusOne => plain(log_exp_m1(x)),
            Repr::Piecewise(pw) => {
                let (log_y, extrapolated) = pw.eval_log_at(x, log_x);
                LogValue { log_y, extrapolated }
            }
            Repr::SquareComposed(inner) => {
                let v = inner.log_at(x, log_x);
                LogValue { log_y: 2.0 * v.log_y, ..v }
            }
            Repr::ArgSquared(inner) => inner.log_at(x * x, 2.0 * log_x),
            Repr::ArgScaled(inner, c) => inner.log_at(c * x, log_x + c.ln()),
        }
    }

    /// `Ψ^{-1}(y)`; `y = 0` maps to `0`.
    pub fn inverse(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) || y.is_nan() {
            return Err(Error::Domain(format!("Ψ^(-1) needs y >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        Ok(self.inverse_unchecked(y))
    }

    fn inverse_unchecked(&self, y: f64) -> f64 {
        match &self.repr {
            Repr::Power(p) => {
                if *p == 1.0 {
                    y
                } else if *p == 2.0 {
                    y.sqrt()
                } else {
                    y.powf(1.0 / p)
                }
            }
            Repr::ExpLogSquared => y.ln_1p().sqrt().exp_m1(),
            Repr::ExpMinusOne => y.ln_1p(),
            Repr::Piecewise(pw) => pw.inverse_linear(y),
            Repr::SquareComposed(inner) => inner.inverse_unchecked(y.sqrt()),
            Repr::ArgSquared(inner) => inner.inverse_unchecked(y).sqrt(),
            Repr::ArgScaled(inner, c) => inner.inverse_unchecked(y) / c,
        }
    }

    /// `ln Ψ^{-1}(e^{log_y})`.
    pub fn inverse_log(&self, log_y: f64) -> f64 {
        if log_y == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        match &self.repr {
            Repr::Power(p) => log_y / p,
            Repr::ExpLogSquared => log_exp_m1(log_add_exp(0.0, log_y).sqrt()),
            Repr::ExpMinusOne => log_add_exp(0.0, log_y).ln(),
            Repr::Piecewise(pw) => pw.inverse_log(log_y),
            Repr::SquareComposed(inner) => inner.inverse_log(0.5 * log_y),
            Repr::ArgSquared(inner) => 0.5 * inner.inverse_log(log_y),
            Repr::ArgScaled(inner, c) => inner.inverse_log(log_y) - c.ln(),
        }
    }

    /// Generic inverse by bisection on `ln x`, independent of the closed forms.
    pub fn inverse_log_bisect(&self, log_y: f64) -> f64 {
        if log_y == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
        while self.eval_log(lo) > log_y && lo > -700.0 {
            lo *= 2.0;
        }
        while self.eval_log(hi) < log_y && hi < 700.0 {
            hi *= 2.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.eval_log(mid) < log_y {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * hi.abs().max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Conjugate `Φ(y) = sup_{x>0} (x y − Ψ(x))`; `+inf` when unbounded.
    pub fn conjugate(&self, y: f64) -> Result<f64> {
        if !(y >= 0.0) || y.is_nan() {
            return Err(Error::Domain(format!("conjugate needs y >= 0, got {y}")));
        }
        if y == 0.0 {
            return Ok(0.0);
        }
        if let Repr::Piecewise(pw) = &self.repr {
            return Ok(pw.conjugate(y));
        }
        Ok(self.conjugate_search(y))
    }

    /// Golden-section search on the concave map `x ↦ x y − Ψ(x)`.
    fn conjugate_search(&self, y: f64) -> f64 {
        // The maximiser lies below the first X with Ψ(X)/X >= y.
        let log_y = y.ln();
        let mut x_hi = 1.0_f64;
        while self.ln_eval(x_hi) - x_hi.ln() < log_y {
            x_hi *= 2.0;
            if x_hi > 1e300 {
                return f64::INFINITY;
            }
        }
        let g = |x: f64| x * y - self.eval_unchecked(x);
        let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
        let (mut a, mut b) = (0.0_f64, x_hi);
        let mut c = b - inv_phi * (b - a);
        let mut d = a + inv_phi * (b - a);
        let (mut gc, mut gd) = (g(c), g(d));
        for _ in 0..300 {
            if b - a <= 1e-12 * x_hi {
                break;
            }
            if gc > gd {
                b = d;
                d = c;
                gd = gc;
                c = b - inv_phi * (b - a);
                gc = g(c);
            } else {
                a = c;
                c = d;
                gc = gd;
                d = a + inv_phi * (b - a);
                gd = g(d);
            }
        }
        g(0.5 * (a + b)).max(gc).max(gd).max(0.0)
    }

    /// Chord-slope convexity and monotonicity on a geometric grid spanning
    /// the domain hint, computed in the log domain.
    pub fn check_convexity(&self) -> Result<()> {
        let (lo, hi) = self.domain_hint;
        let mut xs = geometric(lo, hi, CONVEXITY_POINTS);
        xs.extend(self.knot_abscissae().into_iter().filter(|&x| x >= lo && x <= hi));
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        check_convex_on(self, &xs)
    }
}

fn power(x: f64, p: f64) -> f64 {
    if p == 1.0 {
        x
    } else if p == 2.0 {
        x * x
    } else if p.fract() == 0.0 && p <= 64.0 {
        x.powi(p as i32)
    } else {
        x.powf(p)
    }
}

/// `n` points spaced geometrically in `[lo, hi]`, both ends included.
pub fn geometric(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                lo
            } else if i + 1 == n {
                hi
            } else {
                (a + (b - a) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Validates non-decreasing values and non-decreasing chord slopes on `xs`.
pub fn check_convex_on(psi: &OrliczFunction, xs: &[f64]) -> Result<()> {
    let logs: Vec<f64> = xs.iter().map(|&x| psi.ln_eval(x)).collect();
    let mut prev_slope = f64::NEG_INFINITY;
    for i in 0..xs.len().saturating_sub(1) {
        let (la, lb) = (logs[i], logs[i + 1]);
        if lb < la - TOL_CONVEX * la.abs().max(1.0) {
            return Err(Error::InvalidFunction(format!(
                "decreasing between x = {} and x = {}",
                xs[i],
                xs[i + 1]
            )));
        }
        let slope = log_sub_exp(lb.max(la), la) - (xs[i + 1] - xs[i]).ln();
        if slope < prev_slope - TOL_CONVEX.max(1e-12 * prev_slope.abs()) {
            return Err(Error::InvalidFunction(format!(
                "convexity violated near x = {}: ln chord slope {slope} after {prev_slope}",
                xs[i]
            )));
        }
        prev_slope = prev_slope.max(slope);
    }
    Ok(())
}
