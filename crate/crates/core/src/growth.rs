//! Finite-grid detection of growth conditions and the resulting verdict on
//! the injection `J_Ψ: H^Ψ → 𝔅^Ψ`.
//!
//! The quantity driving everything is
//! `Q_A = limsup_{x→∞} Ψ(Ax) / Ψ(x)²`: `J_Ψ` is compact iff `Q_A = 0` for all
//! `A > 1` and weakly compact iff `Q_A < ∞` for all `A > 1`. A limit cannot be
//! certified on a finite grid, so every verdict here is reported as numerical
//! evidence together with the points that support it.
//!
//! All ratios are formed in the log domain. Trends are read from envelopes of
//! the sampled ratio over the tail window (the last 30% of the grid):
//!
//! * the running maximum from the start of the grid detects divergence to `+∞`;
//! * the running maximum from the end of the grid (`sup_{x' ≥ x}`) detects decay
//!   to `−∞` in log terms, i.e. a zero limsup;
//! * block minima over the tail detect a diverging lower envelope (`lim`, not
//!   `limsup`, as the `Δ⁰` condition requires).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logspace::ls_slope;
use crate::orlicz::{geometric, Family, OrliczFunction};

/// Finite stand-in for "x large enough".
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthSampleGrid {
    pub x_points: Vec<f64>,
    pub a_points: Vec<f64>,
    pub include_knots: bool,
}

pub const DEFAULT_A_POINTS: [f64; 4] = [1.5, 2.0, 4.0, 8.0];
const DEFAULT_GRID_POINTS: usize = 400;

impl GrowthSampleGrid {
    pub fn new(mut x_points: Vec<f64>, a_points: Vec<f64>) -> Result<Self> {
        x_points.sort_by(f64::total_cmp);
        x_points.dedup();
        if x_points.iter().any(|&x| !(x > 0.0 && x.is_finite())) {
            return Err(Error::Grid("x points must be positive and finite".into()));
        }
        if a_points.is_empty() || a_points.iter().any(|&a| !(a > 1.0 && a.is_finite())) {
            return Err(Error::Grid("amplification factors must all exceed 1".into()));
        }
        Ok(GrowthSampleGrid { x_points, a_points, include_knots: false })
    }

    pub fn geometric(lo: f64, hi: f64, n: usize, a_points: Vec<f64>) -> Result<Self> {
        if !(lo > 0.0 && hi > lo) || n < 2 {
            return Err(Error::Grid(format!("bad geometric range [{lo}, {hi}] with {n} points")));
        }
        Self::new(geometric(lo, hi, n), a_points)
    }

    /// Adds the knot abscissae of `psi` that fall inside the current range.
    pub fn with_knots(mut self, psi: &OrliczFunction) -> Self {
        let (lo, hi) = (self.x_points[0], *self.x_points.last().expect("non-empty"));
        self.x_points
            .extend(psi.knot_abscissae().into_iter().filter(|&x| x >= lo && x <= hi));
        self.x_points.sort_by(f64::total_cmp);
        self.x_points.dedup();
        self.include_knots = true;
        self
    }

    /// Grid used when none is configured: 400 geometric points over a range
    /// suited to the growth of `psi`, with the default A-list.
    pub fn default_for(psi: &OrliczFunction) -> Self {
        let a = DEFAULT_A_POINTS.to_vec();
        let trusted = psi.trusted_limit();
        if trusted.is_finite() {
            // Leave room for Ψ(16x) (the largest multiplier any check uses) and
            // stop just short of the top knot, which a composed argument may
            // overshoot by a rounding step.
            let (lo, hint_hi) = psi.domain_hint();
            let hi = hint_hi.min(trusted / 16.0) * (1.0 - 1e-9);
            return Self::geometric(lo, hi, DEFAULT_GRID_POINTS, a)
                .expect("domain hint is a valid range")
                .with_knots(psi);
        }
        let (lo, hi) = if psi.ln_eval(1e4) > 1e3 { (1.0, 1e4) } else { (1e2, 1e40) };
        Self::geometric(lo, hi, DEFAULT_GRID_POINTS, a).expect("static range")
    }

    /// Uses `a_points` in place of the current A-list.
    pub fn with_a_points(mut self, a_points: Vec<f64>) -> Result<Self> {
        if a_points.is_empty() || a_points.iter().any(|&a| !(a > 1.0)) {
            return Err(Error::Grid("amplification factors must all exceed 1".into()));
        }
        self.a_points = a_points;
        Ok(self)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        GrowthSampleGrid {
            x_points: self.x_points.iter().map(|x| x * factor).collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassifierConfig {
    /// Fraction of the grid (from the top) forming the tail window.
    pub tail_fraction: f64,
    /// Threshold on the log-log trend slope.
    pub slope_tol: f64,
    /// Fewer tail points than this gives `Inconclusive`.
    pub min_tail_points: usize,
    /// Tolerance on second differences of `ln Ψ(e^u)`.
    pub nabla_tol: f64,
    /// Number of blocks for the lower-envelope trend.
    pub blocks: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            tail_fraction: 0.3,
            slope_tol: 0.05,
            min_tail_points: 16,
            nabla_tol: 1e-8,
            blocks: 4,
        }
    }
}

impl ClassifierConfig {
    fn tail_start(&self, n: usize) -> usize {
        let tail = ((n as f64) * self.tail_fraction).ceil() as usize;
        n - tail.min(n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Delta2,
    Delta0,
    Delta1,
    Nabla01,
    ConjugateDelta2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Holds {
    Yes,
    No,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trend {
    ToMinusInfinity,
    Bounded,
    ToPlusInfinity,
}

/// A sampled point `(x, value)`; `value` is in log units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WitnessPoint {
    pub x: f64,
    #[serde(with = "crate::serde_float")]
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionEvidence {
    pub condition: Condition,
    pub holds: Holds,
    /// Parameter (β or α) for which the condition was found, if any.
    pub parameter: Option<f64>,
    pub witness: Vec<WitnessPoint>,
    #[serde(with = "crate::serde_float")]
    pub trend_slope: f64,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QAEstimate {
    pub a: f64,
    /// `(ln x, ln Ψ(Ax) − 2 ln Ψ(x))`, ordered by `ln x`.
    pub ratio_log: Vec<(f64, f64)>,
    /// `max` of the ratio over the tail window (linear units).
    #[serde(with = "crate::serde_float")]
    pub tail_sup: f64,
    #[serde(with = "crate::serde_float")]
    pub tail_sup_log: f64,
    pub trend: Trend,
    pub trend_slope: f64,
}

/// Trend of a sequence whose limsup is being estimated.
fn limsup_trend(log_x: &[f64], values: &[f64], tail: usize, tol: f64) -> (Trend, f64) {
    let n = values.len();
    let mut prefix = values.to_vec();
    for i in 1..n {
        prefix[i] = prefix[i].max(prefix[i - 1]);
    }
    let up = ls_slope(&log_x[tail..], &prefix[tail..]);
    if up > tol {
        return (Trend::ToPlusInfinity, up);
    }
    let mut suffix = values.to_vec();
    for i in (0..n.saturating_sub(1)).rev() {
        suffix[i] = suffix[i].max(suffix[i + 1]);
    }
    let down = ls_slope(&log_x[tail..], &suffix[tail..]);
    if down < -tol {
        (Trend::ToMinusInfinity, down)
    } else {
        (Trend::Bounded, down)
    }
}

/// Slope of block minima over the tail window (lower envelope).
fn liminf_slope(log_x: &[f64], values: &[f64], tail: usize, blocks: usize) -> f64 {
    let m = values.len() - tail;
    let blocks = blocks.clamp(2, m.max(2));
    let mut bx = Vec::with_capacity(blocks);
    let mut by = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let s = tail + b * m / blocks;
        let e = tail + (b + 1) * m / blocks;
        if e <= s {
            continue;
        }
        let (i, v) = (s..e)
            .map(|i| (i, values[i]))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty block");
        bx.push(log_x[i]);
        by.push(v);
    }
    ls_slope(&bx, &by)
}

/// Up to a dozen evenly spaced tail points plus the extreme one.
fn witness_points(xs: &[f64], values: &[f64], tail: usize, extreme_max: bool) -> Vec<WitnessPoint> {
    let m = xs.len() - tail;
    let step = (m / 12).max(1);
    let mut idx: Vec<usize> = (tail..xs.len()).step_by(step).collect();
    let ext = (tail..xs.len())
        .max_by(|&a, &b| {
            let o = values[a].total_cmp(&values[b]);
            if extreme_max {
                o
            } else {
                o.reverse()
            }
        })
        .expect("non-empty tail");
    idx.push(ext);
    idx.push(xs.len() - 1);
    idx.sort_unstable();
    idx.dedup();
    idx.into_iter().map(|i| WitnessPoint { x: xs[i], value: values[i] }).collect()
}

fn ensure_trusted(psi: &OrliczFunction, x: f64, multiplier: f64) -> Result<()> {
    let arg = x * multiplier;
    if psi.is_extrapolated(arg) {
        return Err(Error::Extrapolated { x, arg, last_knot: psi.trusted_limit() });
    }
    Ok(())
}

/// `ln Ψ(m x) − ln Ψ(x)` on the grid.
fn log_ratio(psi: &OrliczFunction, xs: &[f64], m: f64) -> Result<Vec<f64>> {
    xs.iter()
        .map(|&x| {
            ensure_trusted(psi, x, m)?;
            Ok(psi.ln_eval(m * x) - psi.ln_eval(x))
        })
        .collect()
}

pub fn estimate_qa(psi: &OrliczFunction, a: f64, grid: &GrowthSampleGrid) -> Result<QAEstimate> {
    estimate_qa_with(psi, a, grid, &ClassifierConfig::default())
}

pub fn estimate_qa_with(
    psi: &OrliczFunction,
    a: f64,
    grid: &GrowthSampleGrid,
    config: &ClassifierConfig,
) -> Result<QAEstimate> {
    if !(a > 1.0) {
        return Err(Error::Grid(format!("A must exceed 1, got {a}")));
    }
    let xs = &grid.x_points;
    let log_x: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let values: Vec<f64> = xs
        .iter()
        .map(|&x| {
            ensure_trusted(psi, x, a)?;
            Ok(psi.ln_eval(a * x) - 2.0 * psi.ln_eval(x))
        })
        .collect::<Result<_>>()?;
    let tail = config.tail_start(xs.len());
    if xs.len() - tail < 2 {
        return Err(Error::Grid("grid too short for a tail window".into()));
    }
    let (trend, trend_slope) = limsup_trend(&log_x, &values, tail, config.slope_tol);
    let tail_sup_log = values[tail..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(QAEstimate {
        a,
        ratio_log: log_x.into_iter().zip(values).collect(),
        tail_sup: tail_sup_log.exp(),
        tail_sup_log,
        trend,
        trend_slope,
    })
}

fn inconclusive(condition: Condition, note: String) -> ConditionEvidence {
    ConditionEvidence {
        condition,
        holds: Holds::Inconclusive,
        parameter: None,
        witness: Vec::new(),
        trend_slope: 0.0,
        note,
    }
}

pub fn check_condition(psi: &OrliczFunction, condition: Condition, grid: &GrowthSampleGrid) -> Result<ConditionEvidence> {
    check_condition_with(psi, condition, grid, &ClassifierConfig::default())
}

pub fn check_condition_with(
    psi: &OrliczFunction,
    condition: Condition,
    grid: &GrowthSampleGrid,
    config: &ClassifierConfig,
) -> Result<ConditionEvidence> {
    let xs = &grid.x_points;
    let tail = config.tail_start(xs.len());
    if xs.len() - tail < config.min_tail_points {
        return Ok(inconclusive(
            condition,
            format!("tail window has {} points, need {}", xs.len() - tail, config.min_tail_points),
        ));
    }
    let log_x: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let tol = config.slope_tol;
    let ev = match condition {
        Condition::Delta2 => {
            let d = log_ratio(psi, xs, 2.0)?;
            let (trend, slope) = limsup_trend(&log_x, &d, tail, tol);
            let holds = if trend == Trend::ToPlusInfinity { Holds::No } else { Holds::Yes };
            ConditionEvidence {
                condition,
                holds,
                parameter: Some(2.0),
                witness: witness_points(xs, &d, tail, true),
                trend_slope: slope,
                note: "ln Ψ(2x) − ln Ψ(x): bounded upper envelope ⇒ Δ₂".into(),
            }
        }
        Condition::Delta0 => {
            let mut best: Option<(f64, f64, Vec<f64>)> = None;
            for beta in [2.0, 4.0, 8.0] {
                let d = log_ratio(psi, xs, beta)?;
                let s = liminf_slope(&log_x, &d, tail, config.blocks);
                if best.as_ref().is_none_or(|b| s > b.1) {
                    best = Some((beta, s, d));
                }
            }
            let (beta, slope, d) = best.expect("three candidates");
            let holds = if slope > tol { Holds::Yes } else { Holds::No };
            ConditionEvidence {
                condition,
                holds,
                parameter: (holds == Holds::Yes).then_some(beta),
                witness: witness_points(xs, &d, tail, false),
                trend_slope: slope,
                note: format!("lower envelope of ln Ψ(βx) − ln Ψ(x), steepest at β = {beta}"),
            }
        }
        Condition::Nabla01 => {
            let (u0, u1) = (log_x[0], log_x[xs.len() - 1]);
            let m = xs.len();
            let h = (u1 - u0) / (m - 1) as f64;
            let f: Vec<f64> = (0..m)
                .map(|i| {
                    let u = u0 + h * i as f64;
                    ensure_trusted(psi, u.exp(), 1.0)?;
                    Ok(psi.eval_log(u))
                })
                .collect::<Result<_>>()?;
            let mut worst = (0usize, f64::INFINITY);
            for i in 1..m - 1 {
                let d2 = (f[i - 1] - 2.0 * f[i] + f[i + 1]) / f[i].abs().max(1.0);
                if d2 < worst.1 {
                    worst = (i, d2);
                }
            }
            let holds = if worst.1 >= -config.nabla_tol { Holds::Yes } else { Holds::No };
            let u = u0 + h * worst.0 as f64;
            ConditionEvidence {
                condition,
                holds,
                parameter: None,
                witness: vec![WitnessPoint { x: u.exp(), value: worst.1 }],
                trend_slope: worst.1,
                note: format!("min relative second difference of ln Ψ(e^u), step {h:.4}"),
            }
        }
        Condition::Delta1 => {
            let mut found = None;
            let mut worst_overall = (0usize, f64::NEG_INFINITY);
            for alpha in [2.0, 4.0, 8.0, 16.0] {
                let d = log_ratio(psi, xs, alpha)?;
                // Violation: ln x − (ln Ψ(αx) − ln Ψ(x)) > 0.
                let worst = (tail..xs.len())
                    .map(|i| (i, log_x[i] - d[i]))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .expect("non-empty tail");
                if worst.1 <= 1e-12 * log_x[worst.0].abs().max(1.0) {
                    found = Some((alpha, worst));
                    break;
                }
                worst_overall = worst;
            }
            match found {
                Some((alpha, w)) => ConditionEvidence {
                    condition,
                    holds: Holds::Yes,
                    parameter: Some(alpha),
                    witness: vec![WitnessPoint { x: xs[w.0], value: w.1 }],
                    trend_slope: 0.0,
                    note: format!("x Ψ(x) ≤ Ψ({alpha} x) on the whole tail window"),
                },
                None => ConditionEvidence {
                    condition,
                    holds: Holds::No,
                    parameter: None,
                    witness: vec![WitnessPoint { x: xs[worst_overall.0], value: worst_overall.1 }],
                    trend_slope: 0.0,
                    note: "x Ψ(x) > Ψ(αx) somewhere in the tail for every α ∈ {2, 4, 8, 16}".into(),
                },
            }
        }
        Condition::ConjugateDelta2 => return check_conjugate_delta2_with(psi, grid, config),
    };
    Ok(ev)
}

pub fn check_conjugate_delta2(psi: &OrliczFunction, grid: &GrowthSampleGrid) -> Result<ConditionEvidence> {
    check_conjugate_delta2_with(psi, grid, &ClassifierConfig::default())
}

/// Sufficient criterion for the conjugate of `Ψ` to satisfy `Δ₂`: some
/// `β > 1` with `Ψ(βx) ≥ 2β Ψ(x)` for large `x`.
pub fn check_conjugate_delta2_with(
    psi: &OrliczFunction,
    grid: &GrowthSampleGrid,
    config: &ClassifierConfig,
) -> Result<ConditionEvidence> {
    let condition = Condition::ConjugateDelta2;
    let xs = &grid.x_points;
    let tail = config.tail_start(xs.len());
    if xs.len() - tail < config.min_tail_points {
        return Ok(inconclusive(condition, "tail window too short".into()));
    }
    let mut last_worst = WitnessPoint { x: xs[tail], value: f64::NEG_INFINITY };
    for beta in [2.0, 4.0, 8.0] {
        let d = log_ratio(psi, xs, beta)?;
        let need = (2.0 * beta).ln();
        // Margin ln Ψ(βx) − ln Ψ(x) − ln(2β); must be ≥ 0 up to rounding.
        let (i, margin) = (tail..xs.len())
            .map(|i| (i, d[i] - need))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty tail");
        let slack = 1e-9 * psi.ln_eval(xs[i]).abs().max(1.0);
        if margin >= -slack {
            return Ok(ConditionEvidence {
                condition,
                holds: Holds::Yes,
                parameter: Some(beta),
                witness: vec![WitnessPoint { x: xs[i], value: margin }],
                trend_slope: 0.0,
                note: format!("Ψ({beta} x) ≥ {} Ψ(x) on the whole tail window", 2.0 * beta),
            });
        }
        last_worst = WitnessPoint { x: xs[i], value: margin };
    }
    Ok(ConditionEvidence {
        condition,
        holds: Holds::No,
        parameter: None,
        witness: vec![last_worst],
        trend_slope: 0.0,
        note: "Ψ(βx) < 2β Ψ(x) somewhere in the tail for every β ∈ {2, 4, 8}".into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Compact,
    WeaklyCompactNotCompact,
    NotWeaklyCompact,
    Inconclusive,
}

/// Operator-theoretic consequences that follow from the verdict by theorem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Consequences {
    /// `H^Ψ ⊆ 𝔅M^Ψ` (the Bergman–Morse–Transue space) whenever `J_Ψ` is weakly compact.
    pub morse_transue_inclusion: bool,
    pub dunford_pettis_note: String,
    /// Smallest tested `q` with `Ψ(x) = O(x^q)`. If `J_Ψ` is `p`-summing then
    /// `Ψ(x) = O(x^{q'})` for every `q' > p`, so `J_Ψ` cannot be `p`-summing
    /// for `p` below this growth order.
    pub summing_bound_q: Option<f64>,
    /// Always true: `J_Ψ` is order bounded into weak-`L^Ψ` of the disk.
    pub order_bounded_weak: bool,
    /// Order boundedness into `L^Ψ` itself, which `Δ¹` guarantees.
    pub order_bounded_strong: Holds,
    /// Equivalences stated by theorem, not tested on the grid.
    pub by_theorem: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InjectionReport {
    pub function: Family,
    /// Always "numerical evidence": a finite grid cannot certify a limit.
    pub evidence_kind: String,
    pub grid_range: (f64, f64),
    pub grid_points: usize,
    pub config: ClassifierConfig,
    pub q_a_table: Vec<QAEstimate>,
    pub conditions: Vec<ConditionEvidence>,
    pub conjugate_delta2: ConditionEvidence,
    pub verdict: Verdict,
    pub consequences: Consequences,
    pub notes: Vec<String>,
}

pub fn classify_injection(psi: &OrliczFunction, grid: &GrowthSampleGrid) -> Result<InjectionReport> {
    classify_injection_with(psi, grid, &ClassifierConfig::default())
}

/// Combines per-A trends: all `−∞` ⇒ compact, some `+∞` ⇒ not weakly
/// compact, otherwise weakly compact but not compact. Since `Q_A` is
/// non-decreasing in `A`, a `+∞` trend at a smaller `A` than a `−∞` trend is
/// contradictory evidence and yields `Inconclusive`.
pub fn verdict_from_trends(table: &[QAEstimate]) -> (Verdict, Option<String>) {
    let mut sorted: Vec<&QAEstimate> = table.iter().collect();
    sorted.sort_by(|a, b| a.a.total_cmp(&b.a));
    for (i, lo) in sorted.iter().enumerate() {
        for hi in &sorted[i + 1..] {
            if lo.trend == Trend::ToPlusInfinity && hi.trend == Trend::ToMinusInfinity {
                return (
                    Verdict::Inconclusive,
                    Some(format!(
                        "conflicting trends: Q_{} → +∞ (slope {:.3}) but Q_{} → 0 (slope {:.3})",
                        lo.a, lo.trend_slope, hi.a, hi.trend_slope
                    )),
                );
            }
        }
    }
    let verdict = if table.iter().all(|q| q.trend == Trend::ToMinusInfinity) {
        Verdict::Compact
    } else if table.iter().any(|q| q.trend == Trend::ToPlusInfinity) {
        Verdict::NotWeaklyCompact
    } else {
        Verdict::WeaklyCompactNotCompact
    };
    (verdict, None)
}

pub fn classify_injection_with(
    psi: &OrliczFunction,
    grid: &GrowthSampleGrid,
    config: &ClassifierConfig,
) -> Result<InjectionReport> {
    for a in DEFAULT_A_POINTS {
        if !grid.a_points.iter().any(|&b| (b - a).abs() < 1e-12) {
            return Err(Error::Grid(format!("A-grid must contain {DEFAULT_A_POINTS:?}, missing {a}")));
        }
    }
    let xs = &grid.x_points;
    let mut notes = Vec::new();
    let tail = config.tail_start(xs.len());
    let short = xs.len() - tail < config.min_tail_points;

    let q_a_table = grid
        .a_points
        .iter()
        .map(|&a| estimate_qa_with(psi, a, grid, config))
        .collect::<Result<Vec<_>>>()?;

    let conditions = [Condition::Delta2, Condition::Delta0, Condition::Delta1, Condition::Nabla01]
        .into_iter()
        .map(|c| check_condition_with(psi, c, grid, config))
        .collect::<Result<Vec<_>>>()?;
    let conjugate_delta2 = check_conjugate_delta2_with(psi, grid, config)?;

    let (mut verdict, conflict) = verdict_from_trends(&q_a_table);
    if let Some(c) = conflict {
        notes.push(c);
    }
    if short {
        verdict = Verdict::Inconclusive;
        notes.push(format!("tail window shorter than {} points", config.min_tail_points));
    }

    let weakly_compact = matches!(verdict, Verdict::Compact | Verdict::WeaklyCompactNotCompact);
    let dunford_pettis_note = match verdict {
        Verdict::Compact => "Dunford-Pettis (compact operators are)".to_string(),
        _ if conjugate_delta2.holds == Holds::Yes => {
            "not Dunford-Pettis: the conjugate satisfies Δ₂, so Dunford-Pettis would force compactness".to_string()
        }
        _ => "undetermined by the growth evidence".to_string(),
    };
    let log_x: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let summing_bound_q = if short {
        None
    } else {
        [1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0].into_iter().find(|&q| {
            let v: Vec<f64> = xs.iter().zip(&log_x).map(|(&x, lx)| psi.ln_eval(x) - q * lx).collect();
            limsup_trend(&log_x, &v, tail, config.slope_tol).0 != Trend::ToPlusInfinity
        })
    };
    let delta1 = conditions
        .iter()
        .find(|c| c.condition == Condition::Delta1)
        .map_or(Holds::Inconclusive, |c| c.holds);

    let consequences = Consequences {
        morse_transue_inclusion: weakly_compact,
        dunford_pettis_note,
        summing_bound_q,
        order_bounded_weak: true,
        order_bounded_strong: delta1,
        by_theorem: vec![
            "strict singularity, not fixing a copy of c₀, and not fixing a copy of ℓ∞ are each \
             equivalent to weak compactness; stated from the verdict, not tested"
                .into(),
        ],
    };

    Ok(InjectionReport {
        function: psi.family().clone(),
        evidence_kind: "numerical evidence".into(),
        grid_range: (xs[0], *xs.last().expect("non-empty")),
        grid_points: xs.len(),
        config: *config,
        q_a_table,
        conditions,
        conjugate_delta2,
        verdict,
        consequences,
        notes,
    })
}

impl InjectionReport {
    /// Flattens the `Q_A` table to `(A, ln x, ratio_log)` rows.
    pub fn write_q_a_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["a", "log_x", "ratio_log"])?;
        for q in &self.q_a_table {
            for (lx, r) in &q.ratio_log {
                w.write_record([q.a.to_string(), lx.to_string(), r.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }

    pub fn condition(&self, c: Condition) -> Option<&ConditionEvidence> {
        if c == Condition::ConjugateDelta2 {
            return Some(&self.conjugate_delta2);
        }
        self.conditions.iter().find(|e| e.condition == c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::build_counterexample;

    #[test]
    fn power_qa_decays() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let grid = GrowthSampleGrid::default_for(&p2);
        let q = estimate_qa(&p2, 2.0, &grid).unwrap();
        assert_eq!(q.trend, Trend::ToMinusInfinity);
        // ratio is exactly 4/x².
        for &(lx, r) in &q.ratio_log {
            assert!((r - (4f64.ln() - 2.0 * lx)).abs() < 1e-9 * lx.abs().max(1.0));
        }
    }

    #[test]
    fn counterexample_ratio_is_one_at_knots() {
        let psi = build_counterexample(5, 4.0).unwrap();
        let seq = crate::orlicz::counterexample_sequence(5);
        let grid = GrowthSampleGrid::new((1..=5).map(|n| seq.x(n)).collect(), vec![2.0]).unwrap();
        let q = estimate_qa(&psi, 2.0, &grid).unwrap();
        for &(_, r) in &q.ratio_log {
            assert!(r.abs() < 1e-12, "{r}");
        }
        assert_eq!(q.trend, Trend::Bounded);
        assert!((q.tail_sup - 1.0).abs() < 1e-12);
    }

    #[test]
    fn exp_minus_one_diverges() {
        let e = OrliczFunction::exp_minus_one();
        let grid = GrowthSampleGrid::default_for(&e);
        assert_eq!(estimate_qa(&e, 3.0, &grid).unwrap().trend, Trend::ToPlusInfinity);
    }

    #[test]
    fn extrapolated_grid_is_rejected() {
        let psi = build_counterexample(2, 4.0).unwrap();
        let grid = GrowthSampleGrid::geometric(4.0, 175_000.0, 50, vec![2.0]).unwrap();
        match estimate_qa(&psi, 2.0, &grid) {
            Err(Error::Extrapolated { x, .. }) => assert!(x * 2.0 > 175_504.0),
            other => panic!("expected extrapolation error, got {other:?}"),
        }
    }

    #[test]
    fn short_grid_is_inconclusive() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let grid = GrowthSampleGrid::geometric(10.0, 1e3, 20, DEFAULT_A_POINTS.to_vec()).unwrap();
        let ev = check_condition(&p2, Condition::Delta2, &grid).unwrap();
        assert_eq!(ev.holds, Holds::Inconclusive);
        assert_eq!(classify_injection(&p2, &grid).unwrap().verdict, Verdict::Inconclusive);
    }

    #[test]
    fn conflicting_trends_are_inconclusive() {
        let mk = |a, trend| QAEstimate {
            a,
            ratio_log: vec![],
            tail_sup: 0.0,
            tail_sup_log: 0.0,
            trend,
            trend_slope: 0.0,
        };
        let (v, note) = verdict_from_trends(&[mk(2.0, Trend::ToPlusInfinity), mk(4.0, Trend::ToMinusInfinity)]);
        assert_eq!(v, Verdict::Inconclusive);
        assert!(note.is_some());
        // Increasing in A is consistent.
        let (v, _) = verdict_from_trends(&[mk(1.5, Trend::ToMinusInfinity), mk(4.0, Trend::ToPlusInfinity)]);
        assert_eq!(v, Verdict::NotWeaklyCompact);
    }

    #[test]
    fn a_grid_must_cover_defaults() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let grid = GrowthSampleGrid::default_for(&p2).with_a_points(vec![2.0]).unwrap();
        assert!(classify_injection(&p2, &grid).is_err());
    }

    #[test]
    fn csv_export() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let rep = classify_injection(&p2, &GrowthSampleGrid::default_for(&p2)).unwrap();
        let mut buf = Vec::new();
        rep.write_q_a_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("a,log_x,ratio_log\n"));
        assert_eq!(text.lines().count(), 1 + 4 * rep.grid_points);
    }
}

#[cfg(test)]
mod verdict_tests {
    use super::*;
    use crate::orlicz::build_counterexample;

    fn classify(psi: &OrliczFunction) -> InjectionReport {
        classify_injection(psi, &GrowthSampleGrid::default_for(psi)).unwrap()
    }

    #[test]
    fn canonical_verdicts() {
        let cases = [
            (OrliczFunction::power(2.0).unwrap(), Verdict::Compact),
            (OrliczFunction::exp_log_squared(), Verdict::Compact),
            (OrliczFunction::exp_minus_one(), Verdict::NotWeaklyCompact),
            (build_counterexample(5, 4.0).unwrap(), Verdict::WeaklyCompactNotCompact),
            (build_counterexample(4, 4.0).unwrap(), Verdict::WeaklyCompactNotCompact),
            (build_counterexample(3, 4.0).unwrap(), Verdict::WeaklyCompactNotCompact),
        ];
        for (psi, want) in cases {
            let rep = classify(&psi);
            assert_eq!(rep.verdict, want, "{:?}: {:#?}", psi.family(), rep.q_a_table.iter().map(|q| (q.a, q.trend, q.trend_slope)).collect::<Vec<_>>());
        }
    }

    #[test]
    fn counterexample_conditions() {
        let psi = build_counterexample(5, 4.0).unwrap();
        let rep = classify(&psi);
        assert_eq!(rep.condition(Condition::Delta2).unwrap().holds, Holds::No);
        assert_eq!(rep.condition(Condition::Delta0).unwrap().holds, Holds::No);
        assert_eq!(rep.condition(Condition::Nabla01).unwrap().holds, Holds::No);
        for q in &rep.q_a_table {
            assert!(q.tail_sup <= q.a.powi(4) * (1.0 + 1e-9), "A = {}: {}", q.a, q.tail_sup);
        }
    }

    #[test]
    fn arg_squared_counterexample() {
        let psi = build_counterexample(5, 4.0).unwrap().arg_square().unwrap();
        let rep = classify(&psi);
        assert_eq!(rep.verdict, Verdict::WeaklyCompactNotCompact);
        assert_eq!(rep.conjugate_delta2.holds, Holds::Yes);
        assert!(rep.consequences.dunford_pettis_note.starts_with("not Dunford-Pettis"));
    }

    #[test]
    fn standard_conditions() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let rep = classify(&p2);
        assert_eq!(rep.condition(Condition::Delta2).unwrap().holds, Holds::Yes);
        assert_eq!(rep.condition(Condition::Delta0).unwrap().holds, Holds::No);
        assert_eq!(rep.condition(Condition::Nabla01).unwrap().holds, Holds::Yes);
        assert_eq!(rep.condition(Condition::Delta1).unwrap().holds, Holds::No);
        assert_eq!(rep.consequences.summing_bound_q, Some(2.0));

        let e = OrliczFunction::exp_minus_one();
        let rep = classify(&e);
        assert_eq!(rep.condition(Condition::Delta2).unwrap().holds, Holds::No);
        assert_eq!(rep.condition(Condition::Delta1).unwrap().holds, Holds::Yes);
        assert_eq!(rep.condition(Condition::Delta0).unwrap().holds, Holds::Yes);
        assert_eq!(rep.consequences.summing_bound_q, None);

        let els = OrliczFunction::exp_log_squared();
        let rep = classify(&els);
        assert_eq!(rep.condition(Condition::Delta2).unwrap().holds, Holds::No);
        assert_eq!(rep.condition(Condition::Delta0).unwrap().holds, Holds::Yes);
        assert_eq!(rep.condition(Condition::Nabla01).unwrap().holds, Holds::Yes);
    }

    #[test]
    fn conjugate_delta2_examples() {
        let p2 = OrliczFunction::power(2.0).unwrap();
        let ev = check_conjugate_delta2(&p2, &GrowthSampleGrid::default_for(&p2)).unwrap();
        assert_eq!((ev.holds, ev.parameter), (Holds::Yes, Some(2.0)));
        let p1 = OrliczFunction::power(1.0).unwrap();
        let ev = check_conjugate_delta2(&p1, &GrowthSampleGrid::default_for(&p1)).unwrap();
        assert_eq!(ev.holds, Holds::No);
        let sq = build_counterexample(5, 4.0).unwrap().arg_square().unwrap();
        let ev = check_conjugate_delta2(&sq, &GrowthSampleGrid::default_for(&sq)).unwrap();
        assert_eq!((ev.holds, ev.parameter), (Holds::Yes, Some(2.0)));
    }

    #[test]
    fn scaled_argument_keeps_verdict() {
        for (psi, c) in [
            (build_counterexample(5, 4.0).unwrap(), 3.0),
            (OrliczFunction::power(3.0).unwrap(), 0.25),
            (OrliczFunction::exp_minus_one(), 2.0),
        ] {
            let grid = GrowthSampleGrid::default_for(&psi);
            let scaled = psi.arg_scale(c).unwrap();
            let a = classify_injection(&psi, &grid).unwrap().verdict;
            let b = classify_injection(&scaled, &grid.scaled(1.0 / c)).unwrap().verdict;
            assert_eq!(a, b, "{:?}", psi.family());
        }
    }
}
