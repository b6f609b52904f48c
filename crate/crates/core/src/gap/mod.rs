//! Explicit height-gap constants, Q(n), Frey's archimedean bound and the
//! ramification data of the torsion tower.

mod constants;
mod herbrand;
mod tower;
#[cfg(test)]
mod tests;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::exact::is_prime;

pub use constants::{
    final_step_bound, frey_chain_implication, thm01_constants, thm02_constants, unramified_gap, Derivation,
    DerivationStep, EllipticGapReport, GapReport, C2Branch, DEFAULT_UNIVERSAL_C,
};
pub use herbrand::HerbrandFunction;
pub use tower::{cross_check, tower_prediction, RamificationBreak, TowerCrossCheck, TowerPrediction};

#[derive(Debug, Error)]
pub enum GapError {
    #[error("vacuous bound: p^f = {pf} does not exceed 2^d = {two_d}")]
    Vacuous { pf: String, two_d: String },
    #[error("p = {0} is excluded: the constructions assume p ≥ 5")]
    SmallPrime(u64),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("formula evaluation failed for {name}: {message}")]
    Formula { name: String, message: String },
}

/// (d, f, p) with q = p² and w = p^{2f} derived on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GapParams {
    pub d: u32,
    pub f: u32,
    pub p: u64,
}

impl GapParams {
    pub fn new(d: u32, f: u32, p: u64) -> Result<GapParams, GapError> {
        if d == 0 || f == 0 {
            return Err(GapError::BadInput("d and f must be at least 1".into()));
        }
        if !is_prime(p) {
            return Err(GapError::BadInput(format!("{p} is not prime")));
        }
        Ok(GapParams { d, f, p })
    }

    pub fn q(&self) -> BigInt {
        BigInt::from(self.p).pow(2)
    }

    pub fn w(&self) -> BigInt {
        BigInt::from(self.p).pow(2 * self.f)
    }

    fn require_p5(&self) -> Result<(), GapError> {
        if self.p < 5 {
            Err(GapError::SmallPrime(self.p))
        } else {
            Ok(())
        }
    }

    /// Warnings for parameters outside the range where the constants are used.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.d + 2 < 64 && self.p < 1u64 << (self.d + 2) {
            out.push(format!("p = {} is below 2^(d+2) = {}", self.p, 1u64 << (self.d + 2)));
        }
        out
    }
}

/// Q(n) = (q − 1)q for n = 1 and q for n ≥ 2.
#[allow(non_snake_case)]
pub fn Q_of_n(n: u32, q: u64) -> Result<u64, GapError> {
    match n {
        0 => Err(GapError::BadInput("n must be at least 1".into())),
        1 => (q - 1).checked_mul(q).ok_or_else(|| GapError::BadInput("q(q − 1) overflows".into())),
        _ => Ok(q),
    }
}

/// (4/δ⁴)·h^{1/2 − δ}.
pub fn frey_rhs(h: f64, delta: f64) -> Result<f64, GapError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(GapError::BadInput(format!("δ = {delta} is outside (0, 1/2)")));
    }
    if !(h >= 0.0) {
        return Err(GapError::BadInput(format!("h = {h} must be nonnegative")));
    }
    Ok(4.0 / delta.powi(4) * h.powf(0.5 - delta))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitFloor {
    pub p: u64,
    /// p^{−4}.
    pub factor: BigRational,
    pub justification: String,
}

/// The factor p^{−4} in the lower bound for Galois orbit sizes, coming from |H| ≤ p⁴.
pub fn galois_orbit_floor(p: u64) -> Result<OrbitFloor, GapError> {
    if p < 5 || !is_prime(p) {
        return Err(GapError::SmallPrime(p));
    }
    Ok(OrbitFloor {
        p,
        factor: BigRational::new(BigInt::from(1), BigInt::from(p).pow(4)),
        justification: "|H| ≤ p^4".into(),
    })
}
