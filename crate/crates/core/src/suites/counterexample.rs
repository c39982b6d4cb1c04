use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport};
use crate::error::{Error, Result};
use crate::growth::{estimate_qa, GrowthSampleGrid, DEFAULT_A_POINTS};
use crate::orlicz::{counterexample_sequence, geometric, Family, OrliczFunction};

const REF_REC: &str = "abscissae follow x_{n+1} = x_n^3 - 2 x_n from x_1 = 4";
const REF_KNOT: &str = "Psi(x_n) = x_n^{r/2} and Psi(2 x_n) = x_n^r at the knots";
const REF_SANDWICH: &str = "x^2 <= Psi(x) <= x^4 for x >= 4";
const REF_Q: &str = "Psi(2x)/Psi(x)^2 does not tend to 0";
const REF_LEMMA: &str = "Psi(eps x) >= eps Psi(x)/(16 M) when Psi(x) <= M x^2 and delta_n <= eps <= 1";
const REF_DELTA: &str = "delta_n = 2 x_{n-1}/x_n = 2/(x_{n-1}^2 - 2)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleConfig {
    pub sandwich_points: usize,
    pub lemma_m: Vec<f64>,
    pub lemma_x_points: usize,
    pub lemma_eps_points: usize,
    pub lemma_tol: f64,
    pub q2_tol: f64,
}

impl Default for CounterexampleConfig {
    fn default() -> Self {
        CounterexampleConfig {
            sandwich_points: 500,
            lemma_m: vec![4.0, 16.0, 64.0],
            lemma_x_points: 400,
            lemma_eps_points: 200,
            lemma_tol: 1e-9,
            q2_tol: 1e-12,
        }
    }
}

#[derive(Serialize)]
struct Recorded<'a> {
    function: &'a Family,
    #[serde(flatten)]
    cfg: &'a CounterexampleConfig,
}

/// Relative gap between an `f64` and an exact integer; zero when the integer
/// is representable and matched exactly.
fn integer_gap(value: f64, exact: &BigUint) -> (f64, bool) {
    let representable = exact.bits() <= 53;
    let target = exact.to_f64().unwrap_or(f64::INFINITY);
    if representable {
        let hit = value == target;
        (if hit { 0.0 } else { ((value - target) / target).abs() }, hit)
    } else {
        let gap = ((value - target) / target).abs();
        (gap, gap <= 4.0 * f64::EPSILON)
    }
}

pub fn suite_counterexample(psi: &OrliczFunction, cfg: &CounterexampleConfig) -> Result<SuiteReport> {
    let (n_max, r) = match psi.family() {
        Family::PaperCounterexample { n_max, r } => (*n_max, *r),
        other => return Err(Error::Domain(format!("counterexample suite needs the counterexample family, got {other:?}"))),
    };
    let mut rep = SuiteReport::new("counterexample", &Recorded { function: psi.family(), cfg });
    let seq = counterexample_sequence(n_max + 1);

    // (i) recurrence
    rep.push(Check::new("x_2 = 56", REF_REC, seq.x(2), 56.0, Relation::Eq));
    rep.push(Check::new("x_3 = 175504", REF_REC, seq.x(3), 175_504.0, Relation::Eq));
    for n in 1..=n_max {
        let x = seq.x_exact(n);
        let next = x * x * x - x * 2u32;
        rep.push(Check::flag(format!("x_{} = x_{n}^3 - 2 x_{n} in integers", n + 1), REF_REC, &next == seq.x_exact(n + 1)));
    }
    if rep.abort_on_failure() {
        return Ok(rep);
    }

    // (ii) knot identities
    let integral = r.fract() == 0.0 && (r / 2.0).fract() == 0.0;
    for n in 1..=n_max {
        let x = seq.x(n);
        for (arg, exponent, label) in [(x, r / 2.0, "x_n"), (2.0 * x, r, "2 x_n")] {
            let v = psi.eval(arg)?;
            let log_gap = (psi.ln_eval(arg) - exponent * x.ln()).abs();
            let mut c = if integral {
                let mut exact = BigUint::one();
                for _ in 0..exponent as u32 {
                    exact *= seq.x_exact(n);
                }
                let (gap, ok) = integer_gap(v, &exact);
                let c = Check::new(format!("n = {n}: Psi({label}) = x_n^{exponent}"), REF_KNOT, gap, 0.0, Relation::Le);
                let c = if ok { Check { pass: true, margin: 0.0, ..c } } else { c };
                c.with_note(if exact.bits() <= 53 { "exact integer comparison" } else { "within 4 ulp of the exact integer" })
            } else {
                Check::new(format!("n = {n}: ln Psi({label}) = {exponent} ln x_n"), REF_KNOT, log_gap, 0.0, Relation::Le)
            };
            if log_gap > 4.0 * f64::EPSILON * (exponent * x.ln()).abs() {
                c = c.failed(format!("log-domain gap {log_gap:e}"));
            }
            rep.push(c);
        }
    }
    if rep.abort_on_failure() {
        return Ok(rep);
    }

    // (iii) sandwich, stated for r = 4
    if r == 4.0 {
        let upper = 4.0;
        let lo = seq.x(1);
        let hi = psi.trusted_limit();
        let mut worst_lo = f64::INFINITY;
        let mut worst_hi = f64::INFINITY;
        let mut violations = 0usize;
        let mut first_violation = None;
        for x in geometric(lo, hi, cfg.sandwich_points) {
            let lx = x.ln();
            let ly = psi.ln_eval(x);
            let slack = 1e-12 * ly.abs();
            let (d_lo, d_hi) = (ly - 2.0 * lx, upper * lx - ly);
            worst_lo = worst_lo.min(d_lo);
            worst_hi = worst_hi.min(d_hi);
            if d_lo < -slack || d_hi < -slack {
                violations += 1;
                first_violation.get_or_insert(x);
            }
        }
        let mut c = Check::new(
            format!("sandwich on {} log-spaced points of [{lo}, {hi:e}]: violations", cfg.sandwich_points),
            REF_SANDWICH,
            violations as f64,
            0.0,
            Relation::Eq,
        )
        .with_note(format!("min ln Psi - 2 ln x = {worst_lo:e}, min {upper} ln x - ln Psi = {worst_hi:e}"));
        if let Some(x) = first_violation {
            c = c.failed(format!("first counterinstance x = {x:e}"));
        }
        rep.push(c);
        if rep.abort_on_failure() {
            return Ok(rep);
        }
    }

    // (iv) Q ratios
    for n in 1..=n_max {
        let x = seq.x(n);
        let ratio = (psi.ln_eval(2.0 * x) - 2.0 * psi.ln_eval(x)).exp();
        rep.push(Check::new(format!("n = {n}: Psi(2 x_n)/Psi(x_n)^2"), REF_Q, ratio, 1.0, Relation::Approx { tol: cfg.q2_tol }));
    }
    if r == 4.0 {
        let grid = GrowthSampleGrid::default_for(psi);
        for a in DEFAULT_A_POINTS {
            let q = estimate_qa(psi, a, &grid)?;
            rep.push(
                Check::new(format!("A = {a}: tail sup of Psi(Ax)/Psi(x)^2 <= A^4"), REF_Q, q.tail_sup_log, 4.0 * a.ln(), Relation::Le)
                    .with_note("compared in log"),
            );
        }
    }

    // (v) key lemma on a brute-force grid
    for &m in &cfg.lemma_m {
        let floor = 1.0 / (16.0 * m);
        let mut min_ratio = f64::INFINITY;
        let mut at = (0.0, 0.0, 0);
        for n in 2..=n_max {
            let (xa, xb) = (seq.x(n), seq.x(n + 1));
            let delta = seq.delta(n);
            let eps = geometric(delta, 1.0, cfg.lemma_eps_points);
            for x in geometric(xa, xb, cfg.lemma_x_points) {
                let lpx = psi.ln_eval(x);
                if lpx > m.ln() + 2.0 * x.ln() {
                    continue;
                }
                for &e in &eps {
                    let ratio = (psi.ln_eval(e * x) - e.ln() - lpx).exp();
                    if ratio < min_ratio {
                        min_ratio = ratio;
                        at = (x, e, n);
                    }
                }
            }
        }
        rep.push(
            Check::new(format!("M = {m}: grid minimum of Psi(eps x)/(eps Psi(x))"), REF_LEMMA, min_ratio, floor - cfg.lemma_tol, Relation::Ge)
                .with_note(format!("attained at n = {}, x = {:e}, eps = {:e}; 1/(16M) = {floor:e}", at.2, at.0, at.1)),
        );
    }

    // (vi) delta identity
    for n in 2..=n_max + 1 {
        let p = seq.x_exact(n - 1);
        let exact = seq.x_exact(n) == &(p * (p * p - 2u32));
        rep.push(Check::flag(format!("n = {n}: 2 x_(n-1)/x_n = 2/(x_(n-1)^2 - 2) in integers"), REF_DELTA, exact));
        let (a, b) = (seq.delta(n), seq.delta_closed_form(n));
        rep.push(Check::new(format!("n = {n}: delta_n in floating point"), REF_DELTA, a, b, Relation::Approx { tol: 4.0 * f64::EPSILON * b }));
    }
    rep.push(Check::new("delta_2 = 1/7", REF_DELTA, seq.delta(2), 1.0 / 7.0, Relation::Approx { tol: 1e-16 }));
    rep.abort_on_failure();
    Ok(rep)
}
