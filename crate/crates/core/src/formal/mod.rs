//! Formal groups of Weierstrass curves and the torsion tower of a
//! supersingular reduction.

mod law;
mod mult;
mod prepare;
mod tower;

pub use law::{build_group_law, build_w_series, negation_series, CurveCoeffs, FormalGroupData, Laurent};
pub use mult::{first_unit_index, mul_by_m, multiplication_series, supersingular_index, MulSeries, SupersingularIndex};
pub use prepare::{first_unit, poly, weierstrass_prepare, Preparation};
pub use tower::{
    eisenstein_tower, is_eisenstein, predicted_g_degree, torsion_valuations, PreparedFactorization, TorsionLevel,
    TowerConfig, TowerLevel, MAX_TOWER_DEGREE,
};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::padic::PadicError;
use crate::series::SeriesError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormalError {
    #[error("curve coefficients are not integral in the coefficient ring")]
    NotIntegral,
    #[error("curve has bad reduction at {0}")]
    BadReduction(u64),
    #[error("no unit coefficient below order {order}; result indeterminate")]
    Indeterminate { order: usize },
    #[error("no unit coefficient up to guard degree {guard}")]
    NoUnitCoefficient { guard: usize },
    #[error("preparation did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("degree {degree} exceeds the desk bound {limit}")]
    DeskBound { degree: u64, limit: u64 },
    #[error("inconsistent tower: {0}")]
    Inconsistent(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Padic(#[from] PadicError),
}

/// α = v_K(p)/(q − 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaInvariant {
    pub v_k_of_p: u64,
    pub q: u64,
    pub value: BigRational,
}

pub fn alpha(v_k_of_p: u64, q: u64) -> Result<AlphaInvariant, FormalError> {
    if v_k_of_p == 0 || q < 2 {
        return Err(FormalError::BadInput(format!("alpha needs v_K(p) ≥ 1 and q ≥ 2, got ({v_k_of_p}, {q})")));
    }
    let value = BigRational::new(BigInt::from(v_k_of_p), BigInt::from(q - 1));
    Ok(AlphaInvariant { v_k_of_p, q, value })
}

#[cfg(test)]
mod tests;
