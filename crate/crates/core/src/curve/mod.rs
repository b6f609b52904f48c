//! Elliptic curves over ℚ: invariants, reduction, point counts, the
//! supersingular prime scan, division polynomials and the group law.

mod divpoly;
mod reduction;
mod weierstrass;

pub use divpoly::{division_polynomials, DivisionPolynomials, MAX_DIVISION_M};
pub use reduction::{
    count_points, is_supersingular, reduce, supersingular_scan, ReducedCurve, RejectReason, ScanCriteria,
    ScanEntry, Verdict, SURJECTIVITY_STATUS,
};
pub use weierstrass::{CurvePoint, WeierstrassCurve};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("singular curve: discriminant is 0")]
    Singular,
    #[error("point is not on the curve")]
    NotOnCurve,
    #[error("bad reduction at {0}")]
    BadReduction(u64),
    #[error("coefficients are not {0}-integral")]
    NotIntegral(u64),
    #[error("p = {0} is excluded: the constructions assume p ≥ 5")]
    SmallPrime(u64),
    #[error("desk bound exceeded: {0}")]
    DeskBound(String),
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
