//! Truncated power series in one and several variables over exact or capped
//! p-adic coefficients.

mod multi;
mod one;
mod ring;

pub use multi::{series_compose2, Series2, Series3, SeriesN};
pub use one::Series1;
pub use ring::{CoeffRing, Domain, PrimeField, Rationals};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series have different coefficient domains")]
    DomainMismatch,
    #[error("inner series has a nonzero constant term")]
    NonzeroConstant,
    #[error("leading coefficient is not invertible")]
    NotInvertible,
    #[error("series is not divisible by the requested power of T")]
    NotDivisible,
}

#[cfg(test)]
mod tests;
