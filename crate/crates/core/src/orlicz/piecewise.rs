//! Piecewise-affine Orlicz functions with knots held in the log domain.

use crate::error::{Error, Result};
use crate::logspace::{log_add_exp, log_sub_exp};

/// One breakpoint `(x, Ψ(x))`. `x` is kept linear (it always fits in an
/// `f64` for the constructions here); `Ψ(x)` is kept as `ln Ψ(x)` and, when
/// representable, also linearly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub x: f64,
    pub log_x: f64,
    pub log_y: f64,
    pub y: f64,
}

impl Knot {
    pub fn from_log(x: f64, log_y: f64) -> Self {
        Knot {
            x,
            log_x: x.ln(),
            log_y,
            y: log_y.exp(),
        }
    }

    /// Keeps the linear value exactly as given.
    pub fn from_linear(x: f64, y: f64) -> Self {
        Knot {
            x,
            log_x: x.ln(),
            log_y: y.ln(),
            y,
        }
    }
}

/// Linear from the origin to the first knot, affine between knots, affine with
/// `tail_slope` beyond the last knot (flagged as extrapolated).
#[derive(Debug, Clone, PartialEq)]
pub struct Piecewise {
    knots: Vec<Knot>,
    log_tail_slope: f64,
}

/// Tolerance on the relative slope comparison when validating convexity.
const SLOPE_TOL: f64 = 1e-9;

impl Piecewise {
    pub fn new(knots: Vec<Knot>, log_tail_slope: f64) -> Result<Self> {
        if knots.is_empty() {
            return Err(Error::InvalidFunction("piecewise function needs at least one knot".into()));
        }
        for k in &knots {
            if !(k.x > 0.0 && k.x.is_finite()) || k.log_y.is_nan() || k.log_y == f64::INFINITY {
                return Err(Error::InvalidFunction(format!("bad knot ({}, ln y = {})", k.x, k.log_y)));
            }
        }
        for w in knots.windows(2) {
            if !(w[1].x > w[0].x && w[1].log_y > w[0].log_y) {
                return Err(Error::InvalidFunction(format!(
                    "knots must increase strictly in both coordinates: ({}, e^{}) then ({}, e^{})",
                    w[0].x, w[0].log_y, w[1].x, w[1].log_y
                )));
            }
        }
        let pw = Piecewise { knots, log_tail_slope };
        pw.check_slopes()?;
        Ok(pw)
    }

    fn check_slopes(&self) -> Result<()> {
        let first = &self.knots[0];
        let mut prev = first.log_y - first.log_x;
        let mut prev_desc = "initial segment".to_string();
        for i in 0..self.knots.len() - 1 {
            let s = self.log_segment_slope(i);
            if s < prev - SLOPE_TOL {
                return Err(Error::InvalidFunction(format!(
                    "not convex: slope of segment {i} (ln {s}) below {prev_desc} (ln {prev})"
                )));
            }
            prev = s;
            prev_desc = format!("segment {i}");
        }
        if self.log_tail_slope < prev - SLOPE_TOL {
            return Err(Error::InvalidFunction(format!(
                "not convex: tail slope (ln {}) below last segment slope (ln {prev})",
                self.log_tail_slope
            )));
        }
        Ok(())
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn log_tail_slope(&self) -> f64 {
        self.log_tail_slope
    }

    pub fn last_knot(&self) -> &Knot {
        self.knots.last().expect("non-empty")
    }

    /// `ln` of the slope between knot `i` and knot `i + 1`.
    pub fn log_segment_slope(&self, i: usize) -> f64 {
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        log_sub_exp(b.log_y, a.log_y) - (b.x - a.x).ln()
    }

    /// `(ln Ψ(x), extrapolated)` given both `x` and `ln x`.
    pub fn eval_log_at(&self, x: f64, log_x: f64) -> (f64, bool) {
        if x <= 0.0 && log_x == f64::NEG_INFINITY {
            return (f64::NEG_INFINITY, false);
        }
        let first = &self.knots[0];
        if x <= first.x {
            if x == first.x {
                return (first.log_y, false);
            }
            return (first.log_y + log_x - first.log_x, false);
        }
        let last = self.last_knot();
        if x >= last.x {
            if x == last.x {
                return (last.log_y, false);
            }
            // ln(x - x_last), written to survive x = inf.
            let log_dx = if x.is_finite() {
                (x - last.x).ln()
            } else {
                log_x + crate::logspace::log1m_exp(last.log_x - log_x)
            };
            return (log_add_exp(last.log_y, self.log_tail_slope + log_dx), true);
        }
        let i = self.knots.partition_point(|k| k.x <= x) - 1;
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        let width = b.x - a.x;
        let u = (x - a.x) / width;
        let v = (b.x - x) / width;
        (log_add_exp(v.ln() + a.log_y, u.ln() + b.log_y), false)
    }

    /// Linear-domain value, exact affine interpolation when knot values are finite.
    pub fn eval_linear(&self, x: f64) -> (f64, bool) {
        if x <= 0.0 {
            return (0.0, false);
        }
        let first = &self.knots[0];
        if x <= first.x {
            return (first.y * (x / first.x), false);
        }
        let last = self.last_knot();
        if x >= last.x {
            if x == last.x {
                return (last.y, false);
            }
            return (last.y + self.log_tail_slope.exp() * (x - last.x), true);
        }
        let i = self.knots.partition_point(|k| k.x <= x) - 1;
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        if a.y.is_finite() && b.y.is_finite() {
            let width = b.x - a.x;
            let u = (x - a.x) / width;
            let v = (b.x - x) / width;
            (v * a.y + u * b.y, false)
        } else {
            (self.eval_log_at(x, x.ln()).0.exp(), false)
        }
    }

    /// Exact per-segment inverse in the linear domain.
    pub fn inverse_linear(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        let first = &self.knots[0];
        if y <= first.y {
            return first.x * (y / first.y);
        }
        let last = self.last_knot();
        if y >= last.y {
            return last.x + (y - last.y) / self.log_tail_slope.exp();
        }
        let i = self.knots.partition_point(|k| k.y <= y) - 1;
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        if b.y.is_finite() {
            a.x + (y - a.y) / (b.y - a.y) * (b.x - a.x)
        } else {
            self.inverse_log(y.ln()).exp()
        }
    }

    /// `ln Ψ^{-1}(e^{log_y})`, segment located by log value.
    pub fn inverse_log(&self, log_y: f64) -> f64 {
        if log_y == f64::NEG_INFINITY {
            return f64::NEG_INFINITY;
        }
        let first = &self.knots[0];
        if log_y <= first.log_y {
            return log_y - first.log_y + first.log_x;
        }
        let last = self.last_knot();
        if log_y >= last.log_y {
            let dx = (log_sub_exp(log_y, last.log_y) - self.log_tail_slope).exp();
            return (last.x + dx).ln();
        }
        let i = self.knots.partition_point(|k| k.log_y <= log_y) - 1;
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        let t = (log_sub_exp(log_y, a.log_y) - log_sub_exp(b.log_y, a.log_y)).exp();
        (a.x + t * (b.x - a.x)).ln()
    }

    /// Legendre conjugate `sup_x (x y − Ψ(x))`; the supremum sits at a knot
    /// (or at the origin), and is `+inf` once `y` exceeds the tail slope.
    pub fn conjugate(&self, y: f64) -> f64 {
        if y <= 0.0 {
            return 0.0;
        }
        if y.ln() > self.log_tail_slope {
            return f64::INFINITY;
        }
        self.knots
            .iter()
            .map(|k| k.x * y - k.y)
            .fold(0.0_f64, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lin(knots: &[(f64, f64)], tail: f64) -> Piecewise {
        let ks = knots.iter().map(|&(x, y)| Knot::from_linear(x, y)).collect();
        Piecewise::new(ks, tail.ln()).unwrap()
    }

    #[test]
    fn rejects_non_convex() {
        let ks = vec![Knot::from_log(1.0, 0.0), Knot::from_log(2.0, 10f64.ln()), Knot::from_log(3.0, 11f64.ln())];
        assert!(Piecewise::new(ks, 100f64.ln()).is_err());
    }

    #[test]
    fn rejects_non_increasing_knots() {
        let ks = vec![Knot::from_log(2.0, 1.0), Knot::from_log(1.0, 2.0)];
        assert!(Piecewise::new(ks, 10.0).is_err());
    }

    #[test]
    fn interpolation_and_tail() {
        let p = lin(&[(1.0, 1.0), (2.0, 3.0)], 4.0);
        assert_eq!(p.eval_linear(1.5).0, 2.0);
        assert_eq!(p.eval_linear(0.5).0, 0.5);
        let (y, extra) = p.eval_linear(3.0);
        assert_eq!((y, extra), (7.0, true));
        assert!((p.eval_log_at(1.5, 1.5f64.ln()).0 - 2f64.ln()).abs() < 1e-15);
        assert!((p.inverse_linear(7.0) - 3.0).abs() < 1e-15);
        assert!((p.inverse_log(2f64.ln()).exp() - 1.5).abs() < 1e-14);
    }

    #[test]
    fn conjugate_scans_knots() {
        let p = lin(&[(1.0, 1.0), (2.0, 3.0)], 4.0);
        // slopes 1, 2, 4: at y = 3 the sup is at x = 2, value 6 - 3.
        assert_eq!(p.conjugate(3.0), 3.0);
        assert_eq!(p.conjugate(4.5), f64::INFINITY);
    }
}
