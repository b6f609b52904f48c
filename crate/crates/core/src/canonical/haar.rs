//! ∫ λ_∞ dμ = 0 over E(ℂ), checked on a grid over the fundamental
//! parallelogram, with the proof's term-by-term structure reported alongside.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact::rat;

use super::local::arch_series;
use super::periods::Uniformization;
use super::{CanonicalError, TOLERANCES};

/// ∫₀¹ b₂(y) dy, exactly.
pub fn b2_integral_exact() -> BigRational {
    // ∫ y² − y + 1/6 = 1/3 − 1/2 + 1/6
    rat(1, 3) - rat(1, 2) + rat(1, 6)
}

#[derive(Clone, Debug, Serialize)]
pub struct JensenTerm {
    pub n: u32,
    /// Grid integral of log|1 − qⁿu|.
    pub plus: f64,
    /// Grid integral of log|1 − qⁿ/u| (n ≥ 1).
    pub minus: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HaarReport {
    pub grid_n: usize,
    pub value: f64,
    pub b2_exact: String,
    /// Midpoint-rule integral of the b₂ term, −½·log|q|·Σ b₂(y_j)/n.
    pub b2_numeric: f64,
    pub jensen_terms: Vec<JensenTerm>,
    pub epsilon: f64,
    pub excluded_points: usize,
    /// ∫ λ over the ε-disk at 0: the log-singular part integrated in closed
    /// form plus the regular part's limit at 0.
    pub disk_mass: f64,
}

fn log_one_minus(v: Complex64) -> f64 {
    (Complex64::new(1.0, 0.0) - v).norm().ln()
}

/// Midpoint grid x = (i + ½)/n, y = (j + ½)/n; point w = x + yτ.
fn grid_point(tau: Complex64, n: usize, i: usize, j: usize) -> (f64, Complex64) {
    let x = (i as f64 + 0.5) / n as f64;
    let y = (j as f64 + 0.5) / n as f64;
    (y, Complex64::new(x, 0.0) + tau * y)
}

fn near_lattice(w: Complex64, tau: Complex64, eps: f64) -> bool {
    let one = Complex64::new(1.0, 0.0);
    [Complex64::new(0.0, 0.0), one, tau, one + tau].iter().any(|c| (w - c).norm() < eps)
}

fn grid_sum<F: Fn(usize, usize) -> f64 + Sync>(n: usize, f: F) -> f64 {
    let rows: Vec<f64> = (0..n).into_par_iter().map(|j| (0..n).map(|i| f(i, j)).sum()).collect();
    rows.iter().sum::<f64>() / (n * n) as f64
}

pub fn haar_report(unif: &Uniformization, grid_n: usize) -> Result<HaarReport, CanonicalError> {
    if grid_n < 64 {
        return Err(CanonicalError::BadInput("grid_n must be at least 64".into()));
    }
    let tau = unif.tau;
    let n = grid_n;
    let eps = TOLERANCES.haar_epsilon;
    let log_abs_q = -2.0 * PI * tau.im;

    // Regular part of λ at 0: λ(w) + log|2πw| → −log|q|/12 − 2Σ log|1 − qᵏ|.
    let mut regular0 = -log_abs_q / 12.0;
    for k in 1..200 {
        let qk = (Complex64::new(0.0, 2.0 * PI) * tau * k as f64).exp();
        if qk.norm() < 1e-18 {
            break;
        }
        regular0 -= 2.0 * log_one_minus(qk);
    }
    let disk_area = PI * eps * eps / tau.im;
    let disk_mean = regular0 - ((2.0 * PI * eps).ln() - 0.5);
    let disk_mass = disk_area * disk_mean;

    let excluded: usize = (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .filter(|&(i, j)| near_lattice(grid_point(tau, n, i, j).1, tau, eps))
        .count();
    let value = grid_sum(n, |i, j| {
        let (_, w) = grid_point(tau, n, i, j);
        if near_lattice(w, tau, eps) {
            disk_mean
        } else {
            arch_series(w, tau, None).map(|s| s.value).unwrap_or(f64::NAN)
        }
    });

    let b2_numeric =
        -0.5 * log_abs_q * (0..n).map(|j| super::local::b2((j as f64 + 0.5) / n as f64)).sum::<f64>() / n as f64;
    let mut jensen_terms = Vec::new();
    for k in 0..=3u32 {
        let qk = (Complex64::new(0.0, 2.0 * PI) * tau * k as f64).exp();
        let u = |i, j| (Complex64::new(0.0, 2.0 * PI) * grid_point(tau, n, i, j).1).exp();
        let plus = grid_sum(n, |i, j| log_one_minus(qk * u(i, j)));
        let minus = (k > 0).then(|| grid_sum(n, |i, j| log_one_minus(qk / u(i, j))));
        jensen_terms.push(JensenTerm { n: k, plus, minus });
    }
    Ok(HaarReport {
        grid_n,
        value,
        b2_exact: b2_integral_exact().to_string(),
        b2_numeric,
        jensen_terms,
        epsilon: eps,
        excluded_points: excluded,
        disk_mass,
    })
}

/// ∫ λ_∞ over the fundamental parallelogram with normalised Haar measure.
pub fn haar_integral_check(unif: &Uniformization, grid_n: usize) -> Result<f64, CanonicalError> {
    Ok(haar_report(unif, grid_n)?.value)
}
