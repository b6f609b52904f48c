//! Capped-precision p-adic numbers over unramified extensions of ℚ_p, and
//! Newton polygons.

mod element;
mod newton;
mod zp;

pub use element::{Padic, PadicContext};
pub use newton::{NewtonPolygon, Segment};
pub use zp::ZpMod;

use thiserror::Error;

use crate::exact::ExactError;

/// Default absolute precision in p-adic digits.
pub const DEFAULT_PRECISION: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PadicError {
    #[error("precision exhausted: operand is zero to its known precision")]
    PrecisionExhausted,
    #[error("operands come from different p-adic contexts")]
    ContextMismatch,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}
