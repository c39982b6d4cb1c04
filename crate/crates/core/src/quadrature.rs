//! Quadrature rules for the normalized measures on the unit circle and the
//! unit disk.
//!
//! Disk rules are tensor products of a radial rule (weight `2r dr` folded in)
//! and an angular rule (weight `dθ / 2π`). Radial abscissae are held as gaps
//! `1 − r` so that nodes crowding the boundary keep full relative accuracy.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampled::{Polar, SampledFunction};

/// Gauss–Legendre node on `[-1, 1]` with `1 ∓ x` carried exactly.
#[derive(Debug, Clone, Copy)]
pub struct GlNode {
    pub x: f64,
    pub one_minus_x: f64,
    pub one_plus_x: f64,
    pub weight: f64,
}

/// Gauss–Legendre rule of order `n`, nodes ascending; cached per order.
pub fn gauss_legendre(n: usize) -> Arc<Vec<GlNode>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<GlNode>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(rule) = cache.lock().expect("gl cache").get(&n) {
        return Arc::clone(rule);
    }
    let rule = Arc::new(compute_gauss_legendre(n));
    cache.lock().expect("gl cache").insert(n, Arc::clone(&rule));
    rule
}

/// Newton iteration runs in the angle `x = cos θ` so that
/// `1 − x = 2 sin²(θ/2)` stays accurate.
fn compute_gauss_legendre(n: usize) -> Vec<GlNode> {
    assert!(n >= 1);
    let mut upper = Vec::with_capacity(n.div_ceil(2));
    for i in 0..n.div_ceil(2) {
        let mut theta = PI * (i as f64 + 0.75) / (n as f64 + 0.5);
        let mut dp = 0.0;
        for _ in 0..32 {
            let x = theta.cos();
            let (p, d) = legendre(n, x);
            dp = d;
            // d/dθ P_n(cos θ) = −sin θ P_n'(x)
            let step = p / (-theta.sin() * d);
            theta -= step;
            if step.abs() <= 4.0 * f64::EPSILON * theta {
                break;
            }
        }
        let x = theta.cos();
        let (_, d) = legendre(n, x);
        if d.is_finite() {
            dp = d;
        }
        let s = theta.sin();
        let one_minus_x = 2.0 * (0.5 * theta).sin().powi(2);
        let one_plus_x = 2.0 * (0.5 * theta).cos().powi(2);
        let weight = 2.0 / (s * s * dp * dp);
        upper.push(GlNode { x, one_minus_x, one_plus_x, weight });
    }
    // `upper` runs from x ≈ 1 downwards; mirror to fill x < 0.
    let mut nodes = vec![upper[0]; n];
    for (i, g) in upper.iter().enumerate() {
        nodes[n - 1 - i] = *g;
        nodes[i] = GlNode { x: -g.x, one_minus_x: g.one_plus_x, one_plus_x: g.one_minus_x, weight: g.weight };
    }
    if n % 2 == 1 {
        let mid = &mut nodes[n / 2];
        *mid = GlNode { x: 0.0, one_minus_x: 1.0, one_plus_x: 1.0, weight: mid.weight };
    }
    nodes
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DomainKind {
    Circle,
    Disk,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RadialRule {
    GaussLegendre,
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasureDomain {
    pub kind: DomainKind,
    pub n_theta: usize,
    pub n_radial: usize,
    pub radial_rule: RadialRule,
}

pub const DEFAULT_N_THETA: usize = 512;
pub const DEFAULT_N_RADIAL: usize = 128;
/// Gauss–Legendre order of each panel in graded rules.
pub const PANEL_ORDER: usize = 16;

impl Default for MeasureDomain {
    fn default() -> Self {
        Self::disk()
    }
}

/// One radial abscissa with its weight (including `2r` on the disk).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialNode {
    pub r: f64,
    pub gap: f64,
    pub weight: f64,
}

/// Tensor-product rule; angles are offsets from `center`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub center: f64,
    pub radial: Vec<RadialNode>,
    pub angular: Vec<(f64, f64)>,
}

impl Rule {
    pub fn len(&self) -> usize {
        self.radial.len() * self.angular.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_weight(&self) -> f64 {
        let r: f64 = self.radial.iter().map(|n| n.weight).sum();
        let a: f64 = self.angular.iter().map(|n| n.1).sum();
        r * a
    }

    /// Node `k` in row-major order (radial outer).
    pub fn node(&self, k: usize) -> (Polar, f64) {
        let m = self.angular.len();
        let (rn, (phi, wa)) = (&self.radial[k / m], self.angular[k % m]);
        (Polar { r: rn.r, gap: rn.gap, center: self.center, phi }, rn.weight * wa)
    }
}

fn check_count(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain(format!("{what} must be positive")));
    }
    Ok(())
}

impl MeasureDomain {
    pub fn circle() -> Self {
        MeasureDomain { kind: DomainKind::Circle, n_theta: DEFAULT_N_THETA, n_radial: 1, radial_rule: RadialRule::GaussLegendre }
    }

    pub fn disk() -> Self {
        MeasureDomain {
            kind: DomainKind::Disk,
            n_theta: DEFAULT_N_THETA,
            n_radial: DEFAULT_N_RADIAL,
            radial_rule: RadialRule::GaussLegendre,
        }
    }

    pub fn with_resolution(mut self, n_radial: usize, n_theta: usize) -> Result<Self> {
        check_count(n_radial, "n_radial")?;
        check_count(n_theta, "n_theta")?;
        self.n_radial = n_radial;
        self.n_theta = n_theta;
        Ok(self)
    }

    pub fn with_radial_rule(mut self, rule: RadialRule) -> Self {
        self.radial_rule = rule;
        self
    }

    /// Same domain with radial resolution multiplied by `factor`.
    pub fn refined(&self, factor: usize) -> Self {
        MeasureDomain { n_radial: self.n_radial * factor, ..*self }
    }

    /// Same domain with both resolutions halved (at least one node each).
    pub fn coarsened(&self) -> Self {
        MeasureDomain { n_radial: (self.n_radial / 2).max(1), n_theta: (self.n_theta / 2).max(1), ..*self }
    }

    /// Quadrature rule adapted to `f`: a single angle for radial functions,
    /// graded panels around a boundary peak, enough radial nodes to integrate
    /// polynomial moduli of the given degree.
    pub fn rule_for(&self, f: &SampledFunction) -> Rule {
        match self.kind {
            DomainKind::Circle => self.circle_rule(f, 0.0),
            DomainKind::Disk => {
                let scale = self.panel_scale();
                let (center, angular) = angular_rule(f, self.n_theta, 0.0, scale);
                let radial = match (f.peak(), self.radial_rule) {
                    (Some((w, _)), _) => graded_radial(w, PANEL_ORDER * scale),
                    (None, RadialRule::GaussLegendre) => {
                        let n = self.n_radial.max(f.degree().map_or(0, |d| 2 * d + 16));
                        gl_radial(n)
                    }
                    (None, RadialRule::Uniform) => uniform_radial(self.n_radial),
                };
                Rule { center, radial, angular }
            }
        }
    }

    /// Rule on the circle of radius `1 − gap` (normalized arc length).
    pub fn circle_rule(&self, f: &SampledFunction, gap: f64) -> Rule {
        let (center, angular) = angular_rule(f, self.n_theta, gap, self.panel_scale());
        Rule { center, radial: vec![RadialNode { r: 1.0 - gap, gap, weight: 1.0 }], angular }
    }

    fn panel_scale(&self) -> usize {
        (self.n_radial / DEFAULT_N_RADIAL).max(1)
    }
}

fn angular_rule(f: &SampledFunction, n_theta: usize, gap: f64, scale: usize) -> (f64, Vec<(f64, f64)>) {
    if f.is_radial() {
        return (0.0, vec![(0.0, 1.0)]);
    }
    if let Some((w, angle)) = f.peak() {
        return (angle, graded_angular(w + gap, PANEL_ORDER * scale));
    }
    (0.0, uniform_angular(n_theta))
}

pub fn uniform_angular(n: usize) -> Vec<(f64, f64)> {
    (0..n).map(|j| (TAU * j as f64 / n as f64, 1.0 / n as f64)).collect()
}

/// Composite Gauss–Legendre on `[a, b]` panels, weight scaled by `factor`.
fn panels(breaks: &[f64], order: usize, factor: f64) -> Vec<(f64, f64, f64)> {
    let gl = gauss_legendre(order);
    let mut out = Vec::with_capacity(order * breaks.len());
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let half = 0.5 * (b - a);
        for g in gl.iter() {
            // (abscissa, distance above a, weight)
            out.push((a + half * g.one_plus_x, half * g.one_plus_x, g.weight * half * factor));
        }
    }
    out
}

/// Breakpoints `0, w 2^{-3}, w 2^{-2}, …` up to `limit`.
fn geometric_breaks(w: f64, limit: f64) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = w / 8.0;
    while x < limit {
        b.push(x);
        x *= 2.0;
    }
    b.push(limit);
    b
}

/// Angular offsets in `[-π, π]` graded towards 0 at width `w`.
pub fn graded_angular(w: f64, order: usize) -> Vec<(f64, f64)> {
    let pos = geometric_breaks(w, PI);
    let half = panels(&pos, order, 1.0 / TAU);
    let mut out: Vec<(f64, f64)> = half.iter().rev().map(|&(x, _, wt)| (-x, wt)).collect();
    out.extend(half.iter().map(|&(x, _, wt)| (x, wt)));
    out
}

/// Gauss–Legendre in `r` on `[0, 1]` with weight `2r`.
pub fn gl_radial(n: usize) -> Vec<RadialNode> {
    gauss_legendre(n)
        .iter()
        .map(|g| {
            let gap = 0.5 * g.one_minus_x;
            let r = 0.5 * g.one_plus_x;
            RadialNode { r, gap, weight: g.weight * r }
        })
        .collect()
}

/// Midpoint rule in `r` with weight `2r`.
pub fn uniform_radial(n: usize) -> Vec<RadialNode> {
    (0..n)
        .map(|i| {
            let gap = (i as f64 + 0.5) / n as f64;
            let r = 1.0 - gap;
            RadialNode { r, gap, weight: 2.0 * r / n as f64 }
        })
        .collect()
}

/// Radial panels graded in the gap `1 − r` towards the boundary at width `w`.
pub fn graded_radial(w: f64, order: usize) -> Vec<RadialNode> {
    let breaks = geometric_breaks(w, 1.0);
    panels(&breaks, order, 1.0)
        .into_iter()
        .map(|(gap, _, wt)| {
            let r = 1.0 - gap;
            RadialNode { r, gap, weight: 2.0 * r * wt }
        })
        .collect()
}
