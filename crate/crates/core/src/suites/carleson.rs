use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::{Check, Relation, SuiteReport};
use crate::quadrature::gauss_legendre;

const REF_WINDOW: &str = "Carleson window area is comparable to h squared";
const REF_TSUP: &str = "Carleson window area over t is at most h for t up to h";
const REF_ROT: &str = "window area is rotation invariant";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarlesonConfig {
    pub h_grid: Vec<f64>,
    pub xi_angles: Vec<f64>,
    pub quadrature_order: usize,
    pub t_subdivisions: usize,
}

impl Default for CarlesonConfig {
    fn default() -> Self {
        CarlesonConfig {
            h_grid: (1..=10).map(|k| 2f64.powi(-k)).collect(),
            xi_angles: vec![0.0, 1.0, 2.5, PI, 5.0],
            quadrature_order: 64,
            t_subdivisions: 8,
        }
    }
}

/// Normalized area of `{z ∈ 𝔻 : |z − ξ| < h}` for `|ξ| = 1`, `0 < h ≤ 2`.
pub fn carleson_area(h: f64) -> f64 {
    let lens = h * h * (h / 2.0).acos() + 2.0 * (h / 2.0).asin() - 0.5 * h * (4.0 - h * h).sqrt();
    lens / PI
}

/// The same area as `∫₀^h 2 acos(ρ/2) ρ dρ / π` in polar coordinates about `ξ`.
pub fn carleson_area_quadrature(h: f64, order: usize) -> f64 {
    let s: f64 = gauss_legendre(order)
        .iter()
        .map(|n| {
            let rho = 0.5 * h * n.one_plus_x;
            n.weight * 2.0 * (rho / 2.0).acos() * rho
        })
        .sum();
    0.5 * h * s / PI
}

/// The same area in global polar coordinates, measuring for each radius the
/// arc of angles inside the window explicitly around `ξ = e^{i xi_angle}`.
pub fn carleson_area_polar(h: f64, xi_angle: f64, order: usize) -> f64 {
    let r0 = 1.0 - h;
    let s: f64 = gauss_legendre(order)
        .iter()
        .map(|n| {
            // r = r0 + h u², u ∈ (0, 1), removes the square-root edge at r0.
            let u = 0.5 * n.one_plus_x;
            let r = r0 + h * u * u;
            let cos_half = ((1.0 + r * r - h * h) / (2.0 * r)).clamp(-1.0, 1.0);
            let beta = cos_half.acos();
            let lo = (xi_angle - beta).rem_euclid(TAU);
            let hi = (xi_angle + beta).rem_euclid(TAU);
            let arc = if hi >= lo { hi - lo } else { TAU - lo + hi };
            0.5 * n.weight * arc * r * 2.0 * h * u
        })
        .sum();
    s / PI
}

pub fn suite_carleson_window(cfg: &CarlesonConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("carleson", cfg);
    for &h in &cfg.h_grid {
        if !(h > 0.0 && h <= 0.5) {
            rep.push(Check::new(format!("h = {h} in (0, 1/2]"), REF_WINDOW, h, 0.5, Relation::Le).failed("h out of range"));
            continue;
        }
        let a = carleson_area(h);
        let q = carleson_area_quadrature(h, cfg.quadrature_order);
        rep.push(
            Check::new(format!("h = {h:e}: h^2/4 <= A"), REF_WINDOW, a, h * h / 4.0, Relation::Ge)
                .with_note(format!("A/h^2 = {:.6}", a / (h * h))),
        );
        rep.push(Check::new(format!("h = {h:e}: A <= h^2"), REF_WINDOW, a, h * h, Relation::Le));
        rep.push(Check::new(
            format!("h = {h:e}: formula vs quadrature"),
            REF_WINDOW,
            q,
            a,
            Relation::Approx { tol: 1e-6 * a },
        ));
        let areas: Vec<f64> = cfg.xi_angles.iter().map(|&xi| carleson_area_polar(h, xi, cfg.quadrature_order)).collect();
        let lo = areas.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = areas.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        rep.push(Check::new(format!("h = {h:e}: rotation spread over xi"), REF_ROT, hi - lo, 1e-10, Relation::Le));
        rep.push(Check::new(
            format!("h = {h:e}: polar quadrature vs formula"),
            REF_WINDOW,
            areas[0],
            a,
            Relation::Approx { tol: 1e-6 * h * h },
        ));
        let tsup = (0..=cfg.t_subdivisions)
            .map(|j| {
                let t = h * 2f64.powi(-(j as i32));
                carleson_area(t) / t
            })
            .fold(0.0, f64::max);
        rep.push(Check::new(format!("h = {h:e}: sup_t A(t)/t <= h"), REF_TSUP, tsup, h, Relation::Le));
    }
    rep
}
