//! Modulars and Luxemburg norms on the circle and the disk, Hardy and Bergman
//! norms, Morse–Transue membership evidence and weak-tail checks.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logspace::{log_sum_exp, CompensatedSum};
use crate::orlicz::OrliczFunction;
use crate::quadrature::{DomainKind, MeasureDomain, Rule};
use crate::sampled::SampledFunction;

const CHUNK: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormConfig {
    /// Accept `c` once `|modular(c) − 1| ≤ tol_mod`.
    pub tol_mod: f64,
    /// Or once the bracket's relative width is at most this.
    pub rel_width: f64,
    pub max_iter: usize,
}

impl Default for NormConfig {
    fn default() -> Self {
        NormConfig { tol_mod: 1e-12, rel_width: 1e-14, max_iter: 200 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NormResult {
    pub value: f64,
    #[serde(with = "crate::serde_float::pair")]
    pub bracket: (f64, f64),
    #[serde(with = "crate::serde_float")]
    pub modular_at_value: f64,
    pub bisection_iters: usize,
    /// `|modular(value)|` difference against a rule of half the resolution.
    #[serde(with = "crate::serde_float")]
    pub quad_error_est: f64,
    pub converged: bool,
}

/// `|f|` and weights at the nodes of one rule.
#[derive(Debug, Clone)]
pub struct Sampled {
    pub abs: Vec<f64>,
    pub weights: Vec<f64>,
    pub max_abs: f64,
}

impl Sampled {
    pub fn new(f: &SampledFunction, rule: &Rule) -> Self {
        let (abs, weights): (Vec<f64>, Vec<f64>) = (0..rule.len())
            .into_par_iter()
            .map(|k| {
                let (p, w) = rule.node(k);
                (f.abs_polar(&p), w)
            })
            .unzip();
        let max_abs = abs.iter().copied().fold(0.0, f64::max);
        Sampled { abs, weights, max_abs }
    }

    /// Samples given directly as `|f|` values and weights.
    pub fn from_parts(abs: Vec<f64>, weights: Vec<f64>) -> Self {
        assert_eq!(abs.len(), weights.len(), "one weight per sample");
        let max_abs = abs.iter().copied().fold(0.0, f64::max);
        Sampled { abs, weights, max_abs }
    }

    pub fn len(&self) -> usize {
        self.abs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abs.is_empty()
    }

    /// `Σ w Ψ(|f|/c)` in the linear domain; `+inf` if any term overflows.
    fn modular_linear(&self, psi: &OrliczFunction, c: f64) -> f64 {
        let parts: Vec<f64> = self
            .abs
            .par_chunks(CHUNK)
            .zip(self.weights.par_chunks(CHUNK))
            .map(|(a, w)| {
                let mut s = CompensatedSum::default();
                for (&ai, &wi) in a.iter().zip(w) {
                    if ai > 0.0 {
                        s.add(wi * psi.eval_unchecked(ai / c));
                    }
                }
                s.value()
            })
            .collect();
        parts.into_iter().collect::<CompensatedSum>().value()
    }

    /// `ln Σ w Ψ(|f|/c)` fully in the log domain.
    fn log_modular_logspace(&self, psi: &OrliczFunction, log_c: f64) -> f64 {
        let parts: Vec<f64> = self
            .abs
            .par_chunks(CHUNK)
            .zip(self.weights.par_chunks(CHUNK))
            .map(|(a, w)| {
                let terms: Vec<f64> = a
                    .iter()
                    .zip(w)
                    .filter(|(&ai, _)| ai > 0.0)
                    .map(|(&ai, &wi)| wi.ln() + psi.eval_log(ai.ln() - log_c))
                    .collect();
                log_sum_exp(&terms)
            })
            .collect();
        log_sum_exp(&parts)
    }

    /// `∫ Ψ(|f|/c)`; `+inf` when the value leaves the `f64` range.
    pub fn modular(&self, psi: &OrliczFunction, c: f64) -> f64 {
        let m = self.modular_linear(psi, c);
        if m.is_finite() {
            m
        } else {
            self.log_modular_logspace(psi, c.ln()).exp()
        }
    }

    /// `ln ∫ Ψ(|f|/c)` with `c = e^{log_c}`, valid far outside the `f64` range.
    pub fn log_modular(&self, psi: &OrliczFunction, log_c: f64) -> f64 {
        let c = log_c.exp();
        if c > 0.0 && c.is_finite() {
            let m = self.modular_linear(psi, c);
            if m.is_finite() && m > 0.0 {
                return m.ln();
            }
        }
        self.log_modular_logspace(psi, log_c)
    }

    /// Weight of the nodes where `|f| > t`.
    pub fn tail_weight(&self, t: f64) -> f64 {
        self.abs
            .iter()
            .zip(&self.weights)
            .filter(|(&a, _)| a > t)
            .map(|(_, &w)| w)
            .collect::<CompensatedSum>()
            .value()
    }

    /// `‖f‖` with respect to `psi` at this rule's resolution.
    pub fn luxemburg(&self, psi: &OrliczFunction, cfg: &NormConfig) -> NormResult {
        solve_norm(self, psi, cfg)
    }
}

fn zero_result() -> NormResult {
    NormResult {
        value: 0.0,
        bracket: (0.0, 0.0),
        modular_at_value: 0.0,
        bisection_iters: 0,
        quad_error_est: 0.0,
        converged: true,
    }
}

/// Root of `ln M(e^t) = 0` by Illinois steps on a bracket in `t = ln c`.
fn solve_norm(s: &Sampled, psi: &OrliczFunction, cfg: &NormConfig) -> NormResult {
    if s.max_abs == 0.0 {
        return zero_result();
    }
    let g = |t: f64| s.log_modular(psi, t);
    let log_unit = psi.inverse_log(0.0);
    let mut iters = 0usize;

    // Upper end: every node has |f|/c ≤ Ψ^{-1}(1), so M ≤ 1 up to rounding.
    let mut b = s.max_abs.ln() - log_unit;
    let mut gb = g(b);
    let mut step = 1e-15;
    while gb.exp_m1() > cfg.tol_mod && iters < cfg.max_iter {
        b += step;
        step *= 4.0;
        gb = g(b);
        iters += 1;
    }
    let mut a = b - std::f64::consts::LN_2;
    let mut ga = g(a);
    let mut step = std::f64::consts::LN_2;
    while ga <= 0.0 && iters < cfg.max_iter {
        if ga == 0.0 {
            break;
        }
        b = a;
        gb = ga;
        step *= 2.0;
        a -= step;
        ga = g(a);
        iters += 1;
    }
    let accept = |gv: f64| gv.exp_m1().abs() <= cfg.tol_mod;
    let finish = |t: f64, gv: f64, a: f64, b: f64, iters: usize, converged: bool| NormResult {
        value: t.exp(),
        bracket: (a.exp(), b.exp()),
        modular_at_value: gv.exp(),
        bisection_iters: iters,
        quad_error_est: 0.0,
        converged,
    };
    if accept(gb) {
        return finish(b, gb, a.min(b), b, iters, true);
    }
    if accept(ga) {
        return finish(a, ga, a, b.max(a), iters, true);
    }
    if !(ga > 0.0 && gb < 0.0) {
        return finish(b, gb, a, b, iters, false);
    }

    // Illinois: (fa, fb) are the possibly halved values used for the secant.
    let (mut fa, mut fb) = (ga, gb);
    let mut side = 0i8;
    while iters < cfg.max_iter {
        iters += 1;
        if b - a <= cfg.rel_width {
            return finish(b, gb, a, b, iters, true);
        }
        let mut t = (a * fb - b * fa) / (fb - fa);
        if !(t > a && t < b) {
            t = 0.5 * (a + b);
        }
        let gt = g(t);
        if accept(gt) {
            return finish(t, gt, a, b, iters, true);
        }
        if gt < 0.0 {
            b = t;
            gb = gt;
            fb = gt;
            if side == 1 {
                fa *= 0.5;
            }
            side = 1;
        } else {
            a = t;
            fa = gt;
            if side == -1 {
                fb *= 0.5;
            }
            side = -1;
        }
    }
    finish(b, gb, a, b, iters, false)
}

/// `∫ Ψ(|f|/c) dμ` by quadrature.
pub fn modular(f: &SampledFunction, psi: &OrliczFunction, dom: &MeasureDomain, c: f64) -> Result<f64> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("modular needs c > 0, got {c}")));
    }
    Ok(Sampled::new(f, &dom.rule_for(f)).modular(psi, c))
}

pub fn luxemburg_norm(f: &SampledFunction, psi: &OrliczFunction, dom: &MeasureDomain) -> NormResult {
    luxemburg_norm_with(f, psi, dom, &NormConfig::default())
}

/// Luxemburg norm with a quadrature error estimate. For unbounded `f`, a
/// modular that keeps growing under radial refinement means `f ∉ L^Ψ`; the
/// result is then marked non-converged with an unbounded upper bracket.
pub fn luxemburg_norm_with(f: &SampledFunction, psi: &OrliczFunction, dom: &MeasureDomain, cfg: &NormConfig) -> NormResult {
    let s = Sampled::new(f, &dom.rule_for(f));
    let mut res = solve_norm(&s, psi, cfg);
    if res.value > 0.0 {
        let coarse = Sampled::new(f, &dom.coarsened().rule_for(f));
        res.quad_error_est = (coarse.modular(psi, res.value) - res.modular_at_value).abs();
        if !f.is_bounded() && dom.kind == DomainKind::Disk {
            let fine = Sampled::new(f, &dom.refined(4).rule_for(f));
            let m = fine.modular(psi, res.value);
            if !(m <= res.modular_at_value * (1.0 + 1e-3)) {
                res.converged = false;
                res.bracket.1 = f64::INFINITY;
            }
        }
    }
    res
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HardyNorm {
    pub result: NormResult,
    pub argmax_radius: f64,
    /// Circle norms of `f_r` are non-decreasing in `r` (up to 1e-9 relative).
    pub monotone: bool,
    pub per_radius: Vec<(f64, f64)>,
}

/// `1 − 2^{-k}` for `k = 1..=20`, plus `r = 1` when `f` is bounded (every
/// bounded form here extends continuously to the closed disk).
pub fn default_radii(f: &SampledFunction) -> Vec<f64> {
    let mut r: Vec<f64> = (1..=20).map(|k| 1.0 - 0.5f64.powi(k)).collect();
    if f.is_bounded() {
        r.push(1.0);
    }
    r
}

pub fn hardy_norm(f: &SampledFunction, psi: &OrliczFunction, radii: Option<&[f64]>) -> Result<HardyNorm> {
    hardy_norm_with(f, psi, radii, &MeasureDomain::circle(), &NormConfig::default())
}

/// `sup_r ‖f_r‖` over the listed radii on the circle.
pub fn hardy_norm_with(
    f: &SampledFunction,
    psi: &OrliczFunction,
    radii: Option<&[f64]>,
    dom: &MeasureDomain,
    cfg: &NormConfig,
) -> Result<HardyNorm> {
    let owned;
    let radii = match radii {
        Some(r) => r,
        None => {
            owned = default_radii(f);
            &owned
        }
    };
    if radii.is_empty() || radii.iter().any(|&r| !(r > 0.0 && r <= 1.0)) {
        return Err(Error::Domain("radii must lie in (0, 1]".into()));
    }
    let mut per_radius = Vec::with_capacity(radii.len());
    let mut best: Option<(f64, NormResult)> = None;
    for &r in radii {
        let gap = 1.0 - r;
        let rule = dom.circle_rule(f, gap);
        let s = Sampled::new(f, &rule);
        let mut res = solve_norm(&s, psi, cfg);
        if res.value > 0.0 {
            let coarse = Sampled::new(f, &dom.coarsened().circle_rule(f, gap));
            res.quad_error_est = (coarse.modular(psi, res.value) - res.modular_at_value).abs();
        }
        per_radius.push((r, res.value));
        if best.as_ref().is_none_or(|b| res.value > b.1.value) {
            best = Some((r, res));
        }
    }
    let mut sorted = per_radius.clone();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = sorted.windows(2).all(|w| w[1].1 >= w[0].1 * (1.0 - 1e-9));
    let (argmax_radius, mut result) = best.expect("non-empty radii");
    result.converged &= per_radius.iter().all(|p| p.1.is_finite());
    Ok(HardyNorm { result, argmax_radius, monotone, per_radius })
}

pub fn bergman_norm(f: &SampledFunction, psi: &OrliczFunction) -> NormResult {
    luxemburg_norm(f, psi, &MeasureDomain::disk())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MembershipVerdict {
    /// Modulars stabilize under refinement for every `c`.
    Membership,
    /// Modulars keep growing under refinement for some `c`.
    Divergence,
    Unsettled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RefinementTrend {
    Stable,
    Growing,
    Unsettled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipRow {
    pub c: f64,
    /// `ln ∫ Ψ(|f|/c)` at each refinement level.
    #[serde(with = "crate::serde_float::vec")]
    pub log_modulars: Vec<f64>,
    pub trend: RefinementTrend,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MorseTransueEvidence {
    pub label: String,
    pub verdict: MembershipVerdict,
    /// Radial node counts at each refinement level.
    pub levels: Vec<usize>,
    pub rows: Vec<MembershipRow>,
}

pub const REFINEMENT_FACTORS: [usize; 3] = [1, 4, 16];

fn refinement_trend(log_m: &[f64]) -> RefinementTrend {
    let inc: Vec<f64> = log_m.windows(2).map(|w| (w[1] - w[0]).exp_m1()).collect();
    let last = *inc.last().expect("at least two levels");
    if last.abs() <= 1e-6 {
        return RefinementTrend::Stable;
    }
    let increasing = inc.iter().all(|&d| d > 0.0);
    let not_shrinking = inc.windows(2).all(|w| w[1] >= 0.5 * w[0]);
    if increasing && last > 1e-3 && not_shrinking {
        RefinementTrend::Growing
    } else {
        RefinementTrend::Unsettled
    }
}

/// Tracks `∫ Ψ(|f|/c)` under radial refinement for each `c` (decreasing,
/// spanning at least four decades).
pub fn morse_transue_evidence(
    f: &SampledFunction,
    psi: &OrliczFunction,
    dom: &MeasureDomain,
    c_grid: &[f64],
) -> Result<MorseTransueEvidence> {
    if c_grid.len() < 2 || c_grid.iter().any(|&c| !(c > 0.0)) || c_grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Domain("c grid must be positive and strictly decreasing".into()));
    }
    if c_grid[0] / c_grid[c_grid.len() - 1] < 1e4 * (1.0 - 1e-12) {
        return Err(Error::Domain("c grid must span at least four decades".into()));
    }
    let samples: Vec<Sampled> = REFINEMENT_FACTORS
        .iter()
        .map(|&k| Sampled::new(f, &dom.refined(k).rule_for(f)))
        .collect();
    let rows: Vec<MembershipRow> = c_grid
        .iter()
        .map(|&c| {
            let log_modulars: Vec<f64> = samples.iter().map(|s| s.log_modular(psi, c.ln())).collect();
            MembershipRow { c, trend: refinement_trend(&log_modulars), log_modulars }
        })
        .collect();
    let verdict = if rows.iter().any(|r| r.trend == RefinementTrend::Growing) {
        MembershipVerdict::Divergence
    } else if rows.iter().all(|r| r.trend == RefinementTrend::Stable) {
        MembershipVerdict::Membership
    } else {
        MembershipVerdict::Unsettled
    };
    let label = match verdict {
        MembershipVerdict::Membership => "membership evidence",
        MembershipVerdict::Divergence => "divergence evidence",
        MembershipVerdict::Unsettled => "unsettled",
    };
    Ok(MorseTransueEvidence {
        label: label.into(),
        verdict,
        levels: REFINEMENT_FACTORS.iter().map(|k| dom.n_radial * k).collect(),
        rows,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TailMethod {
    /// Closed-form measure of `{|z| > r_t}` for the radial envelope.
    ExactRadial,
    WeightCounting,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailRow {
    pub t: f64,
    /// `ln μ(|f| > t)`.
    #[serde(with = "crate::serde_float")]
    pub log_measure: f64,
    /// `ln (1/Ψ(ct)) = −ln Ψ(ct)`.
    #[serde(with = "crate::serde_float")]
    pub log_bound: f64,
    pub pass: bool,
    /// `Ψ(ct) ≤ 1`: the bound is at least the total mass, so the row says nothing.
    pub small_t_exempt: bool,
    /// `t` exceeds `|f|` at every node.
    pub beyond_max: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeakTailEvidence {
    pub c: f64,
    pub method: TailMethod,
    pub rows: Vec<TailRow>,
    /// Every non-exempt row passes.
    pub all_pass: bool,
    /// Every non-exempt row fails.
    pub all_fail: bool,
    /// Largest `c ∈ {1, 1/2, 1/4, 1/8, 1/16}` for which every non-exempt row passes.
    pub largest_passing_c: Option<f64>,
}

pub const WEAK_TAIL_SCAN: [f64; 5] = [1.0, 0.5, 0.25, 0.125, 0.0625];

/// `t` window `[64 max(1, Ψ^{-1}(1)), ·10^6]`, kept inside the trusted range
/// of `Ψ` at `4t`.
pub fn default_t_grid(psi: &OrliczFunction) -> Vec<f64> {
    let lo = 64.0 * psi.inverse_log(0.0).exp().max(1.0);
    let hi = (lo * 1e6).min(psi.trusted_limit() / 8.0);
    crate::orlicz::geometric(lo, hi, 25)
}

/// `μ(|f| > t) ≤ 1/Ψ(ct)` on a grid of `t`.
pub fn weak_tail_check(
    f: &SampledFunction,
    psi: &OrliczFunction,
    dom: &MeasureDomain,
    c: f64,
    t_grid: &[f64],
) -> Result<WeakTailEvidence> {
    if !(c > 0.0) {
        return Err(Error::Domain(format!("c must be positive, got {c}")));
    }
    if t_grid.is_empty() || t_grid.iter().any(|&t| !(t > 0.0)) || t_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Domain("t grid must be positive and increasing".into()));
    }
    let exact = matches!(f, SampledFunction::EvaluationEnvelope { .. }) && dom.kind == DomainKind::Disk;
    let sampled = (!exact).then(|| Sampled::new(f, &dom.rule_for(f)));
    let log_measure = |t: f64| -> (f64, bool) {
        match (f, &sampled) {
            (SampledFunction::EvaluationEnvelope { psi: inner }, None) => {
                // |S| > t ⟺ |z| > 1 − 1/Ψ(t/4); area 1 − r_t² = g(2 − g).
                let lg = -inner.ln_eval(t / 4.0);
                if lg >= 0.0 {
                    (0.0, false)
                } else {
                    (lg + (2.0 - lg.exp()).ln(), false)
                }
            }
            (_, Some(s)) => (s.tail_weight(t).ln(), t >= s.max_abs),
            _ => unreachable!(),
        }
    };
    let measures: Vec<(f64, f64, bool)> = t_grid.iter().map(|&t| {
        let (m, beyond) = log_measure(t);
        (t, m, beyond)
    }).collect();
    let rows_for = |c: f64| -> Vec<TailRow> {
        measures
            .iter()
            .map(|&(t, log_measure, beyond_max)| {
                let log_bound = -psi.ln_eval(c * t);
                TailRow {
                    t,
                    log_measure,
                    log_bound,
                    pass: log_measure <= log_bound + 1e-12 * log_bound.abs().max(1.0),
                    small_t_exempt: log_bound >= 0.0,
                    beyond_max,
                }
            })
            .collect()
    };
    let passes = |rows: &[TailRow]| rows.iter().filter(|r| !r.small_t_exempt).all(|r| r.pass);
    let rows = rows_for(c);
    let largest_passing_c = WEAK_TAIL_SCAN.iter().copied().find(|&cc| passes(&rows_for(cc)));
    Ok(WeakTailEvidence {
        c,
        method: if exact { TailMethod::ExactRadial } else { TailMethod::WeightCounting },
        all_pass: passes(&rows),
        all_fail: rows.iter().filter(|r| !r.small_t_exempt).all(|r| !r.pass),
        rows,
        largest_passing_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::build_counterexample;
    use crate::witness::{make_kernel_squared, make_monomial, make_scaled_kernel};

    fn p(x: f64) -> OrliczFunction {
        OrliczFunction::power(x).unwrap()
    }

    #[test]
    fn constant_modular_and_norm() {
        let three = SampledFunction::constant(3.0);
        for dom in [MeasureDomain::circle(), MeasureDomain::disk()] {
            assert!((modular(&three, &p(2.0), &dom, 3.0).unwrap() - 1.0).abs() < 1e-14);
            for psi in [p(2.0), OrliczFunction::exp_minus_one(), build_counterexample(4, 4.0).unwrap()] {
                let n = luxemburg_norm(&three, &psi, &dom);
                let want = 3.0 / psi.inverse(1.0).unwrap();
                assert!(n.converged);
                assert!((n.value - want).abs() < 1e-12 * want, "{} vs {want}", n.value);
            }
        }
        assert!(modular(&three, &p(2.0), &MeasureDomain::disk(), 0.0).is_err());
    }

    #[test]
    fn monomial_closed_forms() {
        let disk = MeasureDomain::disk();
        for (n, pp) in [(1u32, 2.0), (3, 4.0), (256, 2.0), (5, 1.0)] {
            let m = modular(&make_monomial(n), &p(pp), &disk, 1.0).unwrap();
            assert!((m - 2.0 / (n as f64 * pp + 2.0)).abs() < 1e-13, "n={n}, p={pp}: {m}");
        }
        let b = bergman_norm(&make_monomial(1), &p(2.0));
        assert!((b.value - 0.5f64.sqrt()).abs() < 1e-12);
        assert!(b.bracket.0 <= b.value && b.value <= b.bracket.1);
        assert!((b.modular_at_value - 1.0).abs() <= 1e-12);
        let c = luxemburg_norm(&make_monomial(7), &OrliczFunction::exp_log_squared(), &MeasureDomain::circle());
        assert!((c.value - 1.0 / OrliczFunction::exp_log_squared().inverse(1.0).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn hardy_examples() {
        let h = hardy_norm(&make_monomial(4), &p(3.0), None).unwrap();
        assert!((h.result.value - 1.0).abs() < 1e-12);
        assert!(h.monotone);
        assert_eq!(h.argmax_radius, 1.0);
        let h = hardy_norm(&SampledFunction::constant(3.0), &p(2.0), None).unwrap();
        assert!((h.result.value - 3.0).abs() < 1e-12);
    }

    #[test]
    fn scaled_kernel_hardy_norm_at_most_one() {
        for (psi, x) in [(p(2.0), 10.0), (build_counterexample(4, 4.0).unwrap(), 56.0)] {
            let f = make_scaled_kernel(&psi, x).unwrap();
            let h = hardy_norm(&f, &psi, None).unwrap();
            assert!(h.result.converged);
            assert!(h.result.value <= 1.02, "{}", h.result.value);
            assert!(h.monotone);
        }
    }

    #[test]
    fn kernel_bergman_lower_bound() {
        for h in [0.125, 1.0 / 32.0, 1.0 / 128.0] {
            let u = make_kernel_squared(h, 0.3).unwrap();
            let n = bergman_norm(&u, &p(2.0));
            assert!(n.value >= h / 9.0 - 1e-6, "h = {h}: {}", n.value);
            assert!(n.quad_error_est < 1e-8, "h = {h}: {}", n.quad_error_est);
        }
    }

    #[test]
    fn envelope_diverges() {
        let psi = p(2.0);
        let s = SampledFunction::EvaluationEnvelope { psi: psi.clone() };
        let ev = morse_transue_evidence(&s, &psi, &MeasureDomain::disk(), &[100.0, 10.0, 4.0, 1.0, 0.01]).unwrap();
        assert_eq!(ev.verdict, MembershipVerdict::Divergence, "{ev:#?}");
        let row = ev.rows.iter().find(|r| r.c == 4.0).unwrap();
        assert_eq!(row.trend, RefinementTrend::Growing);
        let mono = morse_transue_evidence(&make_monomial(3), &psi, &MeasureDomain::disk(), &[100.0, 1.0, 0.01]).unwrap();
        assert_eq!(mono.verdict, MembershipVerdict::Membership);
        assert!(morse_transue_evidence(&s, &psi, &MeasureDomain::disk(), &[10.0, 1.0]).is_err());
        let n = luxemburg_norm(&s, &psi, &MeasureDomain::disk());
        assert!(!n.converged && n.bracket.1.is_infinite());
    }

    #[test]
    fn weak_tail_envelope() {
        let psi = p(2.0);
        let s = SampledFunction::EvaluationEnvelope { psi: psi.clone() };
        let t = default_t_grid(&psi);
        let pass = weak_tail_check(&s, &psi, &MeasureDomain::disk(), 0.125, &t).unwrap();
        assert!(pass.all_pass);
        assert_eq!(pass.largest_passing_c, Some(0.125));
        let fail = weak_tail_check(&s, &psi, &MeasureDomain::disk(), 4.0, &t).unwrap();
        assert!(fail.all_fail);
        let one = weak_tail_check(&s, &psi, &MeasureDomain::disk(), 0.125, &[100.0]).unwrap();
        let m = one.rows[0].log_measure.exp();
        assert!((m - (1.0 - (1.0 - 1.0 / 625.0f64).powi(2))).abs() < 1e-15);
        assert!(m <= 1.0 / 156.25);
        let c1 = weak_tail_check(&SampledFunction::constant(1.0), &psi, &MeasureDomain::disk(), 1.0, &[2.0]).unwrap();
        assert!(c1.rows[0].beyond_max && c1.rows[0].pass && c1.rows[0].log_measure == f64::NEG_INFINITY);
    }

    #[test]
    fn overflowing_modular_uses_log_domain() {
        let e = OrliczFunction::exp_minus_one();
        let f = SampledFunction::constant(1000.0);
        let s = Sampled::new(&f, &MeasureDomain::circle().rule_for(&f));
        assert!((s.log_modular(&e, 0.0) - 1000.0).abs() < 1e-9);
        assert_eq!(s.modular(&e, 1.0), f64::INFINITY);
        let n = s.luxemburg(&e, &NormConfig::default());
        assert!((n.value - 1000.0 / 2f64.ln()).abs() < 1e-9);
    }
}
