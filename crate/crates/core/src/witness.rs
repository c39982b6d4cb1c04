//! Witness families: monomials, squared Poisson-type kernels `u_j`, and the
//! scaled kernels `f_j` normalized by an Orlicz function.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orlicz::OrliczFunction;
use crate::sampled::SampledFunction;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn make_monomial(n: u32) -> SampledFunction {
    SampledFunction::Monomial { n }
}

/// `u(z) = h² / (1 − (1−h) ξ̄ z)²` with `ξ = e^{i xi_angle}`; `0 < h < 1/2`.
pub fn make_kernel_squared(h: f64, xi_angle: f64) -> Result<SampledFunction> {
    if !(h > 0.0 && h < 0.5) {
        return Err(Error::Domain(format!("kernel width h must lie in (0, 1/2), got {h}")));
    }
    Ok(SampledFunction::KernelSquared { h, xi_angle })
}

/// `f_j(z) = x_j ((1−r_j)/(1 − r_j z))²` with `r_j = 1 − 1/Ψ(x_j)`.
pub fn make_scaled_kernel(psi: &OrliczFunction, x_j: f64) -> Result<SampledFunction> {
    let log_psi = psi.ln_eval(x_j);
    if !(x_j > 0.0) || !(log_psi > 2f64.ln()) {
        return Err(Error::Domain(format!("need Ψ(x_j) > 2, got Ψ({x_j}) = e^{log_psi}")));
    }
    Ok(SampledFunction::ScaledKernel { x_j, delta: (-log_psi).exp(), xi_angle: 0.0 })
}

/// `N = ⌊1/h⌋ + 1` kernels `u_j` with peaks at `ξ_j = e^{2πij/N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelFamily {
    pub h: f64,
    pub n_funcs: usize,
    #[serde(skip)]
    pub members: Vec<SampledFunction>,
}

pub fn make_kernel_family(h: f64) -> Result<KernelFamily> {
    if !(h > 0.0 && h <= 0.125) {
        return Err(Error::Domain(format!("kernel family needs 0 < h <= 1/8, got {h}")));
    }
    let n = (1.0 / h).floor() as usize + 1;
    let members = (0..n)
        .map(|j| make_kernel_squared(h, TAU * j as f64 / n as f64))
        .collect::<Result<_>>()?;
    Ok(KernelFamily { h, n_funcs: n, members })
}

/// `e² / (e − 1)²`.
pub fn kernel_sum_constant() -> f64 {
    let e = std::f64::consts::E;
    e * e / ((e - 1.0) * (e - 1.0))
}

impl KernelFamily {
    pub fn xi_angle(&self, j: usize) -> f64 {
        TAU * j as f64 / self.n_funcs as f64
    }

    /// `Σ_j |u_j(e^{it})|`.
    pub fn boundary_sum(&self, t: f64) -> f64 {
        let z = Complex64::from_polar(1.0, t);
        self.members.iter().map(|u| u.abs_at(z)).sum()
    }

    /// Maximum of the boundary sum over `samples` equally spaced angles.
    pub fn max_boundary_sum(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|k| self.boundary_sum(TAU * k as f64 / samples as f64))
            .fold(0.0, f64::max)
    }

    /// `count` deterministic points of the closed disk with
    /// `|z − (1−h) ξ_j| < h`.
    pub fn window_points(&self, j: usize, count: usize) -> Vec<Complex64> {
        let center = Complex64::from_polar(1.0 - self.h, self.xi_angle(j));
        let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
        let mut pts = Vec::with_capacity(count);
        let mut k = 0usize;
        while pts.len() < count {
            // Sunflower spiral filling the window up to radius 0.99 h.
            let rho = 0.99 * self.h * ((k as f64 + 0.5) / (4 * count) as f64).sqrt();
            let z = center + Complex64::from_polar(rho, golden * k as f64);
            if z.norm() <= 1.0 {
                pts.push(z);
            }
            k += 1;
        }
        pts
    }
}

/// `count` polynomials of degree at most `max_degree` with coefficients
/// uniform in the square `[-1, 1]²`, reproducible from `seed`.
pub fn random_polynomials(seed: u64, count: usize, max_degree: usize) -> Vec<SampledFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let deg = rng.gen_range(0..=max_degree);
            let coeffs = (0..=deg)
                .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
                .collect();
            SampledFunction::Polynomial { coeffs }
        })
        .collect()
}
