//! Néron–Tate heights on elliptic curves over ℚ.
//!
//! Normalisation: the naive height of P = (x, y) is h(x)/2, so
//! ĥ(P) = lim h([2^n]P)/4^n is half the value some tables list.

mod doubling;
mod haar;
mod local;
mod periods;
#[cfg(test)]
mod tests;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{CurveError, CurvePoint, WeierstrassCurve};
use crate::exact::ln_bigint;

pub use doubling::{canonical_height_doubling, naive_doubling_sequence, CanonicalHeightEstimate, DEFAULT_DOUBLINGS};
pub use haar::{b2_integral_exact, haar_integral_check, haar_report, HaarReport, JensenTerm};
pub use local::{
    arch_series, b2, canonical_height_local_sum, local_height_arch, local_height_arch_point,
    local_height_good_reduction, local_height_mult_formula, ArchSeries, LocalHeightMethod, LocalHeightValue,
    LocalSum, MultFormulaValue, Place, MAX_MULTIPLE,
};
pub use periods::{agm, cubic_roots, elliptic_log_real, j_from_q, uniformize, TwoTorsionRoots, Uniformization};

#[derive(Debug, Error)]
pub enum CanonicalError {
    #[error("period computation failed: {0}")]
    PeriodFailure(String),
    #[error("point is not on the identity component of E(ℝ)")]
    NotIdentityComponent,
    #[error("the model must have integral coefficients")]
    NotIntegral,
    #[error("λ has a pole at the origin")]
    AtOrigin,
    #[error("bad reduction at {0}: use the multiplicative-reduction formula instead")]
    BadReductionPlace(u64),
    #[error("no multiple [m]P with m ≤ {0} lies in the identity component and in E₀ at every bad prime")]
    TooManyMultiples(u32),
    #[error("p-adic precision exhausted at p = {0}")]
    PrecisionExhausted(u64),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

/// Numerical tolerances used by the height checks, stated once.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Doubling limit against the local decomposition.
    pub method_agreement: f64,
    /// ĥ of a torsion point.
    pub torsion_zero: f64,
    /// Parallelogram law, absolute.
    pub parallelogram: f64,
    /// ĥ([m]P) against m²ĥ(P), per unit of m².
    pub quadratic_scaling: f64,
    /// j(τ) against j(E), relative.
    pub j_agreement: f64,
    /// Evenness of λ_∞.
    pub evenness: f64,
    /// One Jensen term of the Haar integral at grid 256.
    pub jensen_term: f64,
    /// Whole Haar integral at grid 256.
    pub haar_total: f64,
    /// Exclusion radius around the origin in the Haar integral, lattice units.
    pub haar_epsilon: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    method_agreement: 1e-6,
    torsion_zero: 1e-8,
    parallelogram: 4e-6,
    quadratic_scaling: 1e-6,
    j_agreement: 1e-8,
    evenness: 1e-10,
    jensen_term: 1e-6,
    haar_total: 1e-4,
    haar_epsilon: 1e-3,
};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NaiveHeight {
    pub value: f64,
}

/// h(x(P))/2, and 0 at the origin.
pub fn naive_height(p: &CurvePoint) -> NaiveHeight {
    let value = match p.x() {
        None => 0.0,
        Some(x) => rational_height(x) / 2.0,
    };
    NaiveHeight { value }
}

/// log max(|a|, |b|) for x = a/b in lowest terms.
pub fn rational_height(x: &BigRational) -> f64 {
    ln_bigint(x.numer()).max(ln_bigint(x.denom()))
}

/// Checks that P lies on the curve.
pub fn check_point(curve: &WeierstrassCurve, p: &CurvePoint) -> Result<(), CanonicalError> {
    match p {
        CurvePoint::Infinity => Ok(()),
        CurvePoint::Affine { x, y } if curve.contains(x, y) => Ok(()),
        _ => Err(CurveError::NotOnCurve.into()),
    }
}
