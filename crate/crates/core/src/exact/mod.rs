//! Exact integers, rationals, finite fields and valuations.

pub mod fp_poly;
mod fq;
mod qpoly;
mod valuation;

pub use fq::{FiniteField, FqElement};
pub use qpoly::QPoly;
pub use valuation::{
    binomial_claim_holds, binomial_claim_witness, legendre, vp_binomial_kummer, vp_int, vp_u64,
    Valuation,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_traits::{Signed, Zero};
use thiserror::Error;

/// Largest p^f accepted for exhaustive finite-field enumeration.
pub const MAX_FIELD_SIZE: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("desk bound exceeded: {0}")]
    DeskBound(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different finite fields")]
    FieldMismatch,
    #[error("modulus is not a monic irreducible polynomial")]
    Reducible,
    #[error("cannot parse rational: {0}")]
    Parse(String),
}

/// Deterministic Miller–Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % small == 0 {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = fp_poly::powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = fp_poly::mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Parses "n", "-n" or "n/d".
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let s = s.trim();
    let bad = || ExactError::Parse(s.to_string());
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(ExactError::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Reduces a rational with p-unit denominator into [0, p).
pub fn reduce_mod_p(x: &BigRational, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let den = x.denom() % &bp;
    if den.is_zero() {
        return None;
    }
    let num = ((x.numer() % &bp) + &bp) % &bp;
    let num: u64 = num.try_into().ok()?;
    let den: u64 = ((den + &bp) % &bp).try_into().ok()?;
    Some(fp_poly::mulmod(num, fp_poly::invmod(den, p), p))
}

/// v_p of a nonzero rational, as a signed exponent.
pub fn vp_rational(x: &BigRational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let vn = vp_int(x.numer(), p).ok()?.finite()? as i64;
    let vd = vp_int(x.denom(), p).ok()?.finite()? as i64;
    Some(vn - vd)
}

/// Natural log of |n| for arbitrarily large n, accurate to binary64 rounding.
pub fn ln_bigint(n: &BigInt) -> f64 {
    let n = n.abs();
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        let (_, digits) = n.to_u64_digits();
        let mut v = 0f64;
        for d in digits.iter().rev() {
            v = v * 18446744073709551616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    let top: BigInt = &n >> shift;
    let top: u64 = top.try_into().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact rational from an integer pair.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_in_range(1, 30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_003));
        assert!(!is_prime(1_000_001));
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), rat_int(-7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce_mod_p(&rat(1, 2), 5), Some(3));
        assert_eq!(reduce_mod_p(&rat(-1, 1), 5), Some(4));
        assert_eq!(reduce_mod_p(&rat(1, 5), 5), None);
        assert_eq!(vp_rational(&rat(50, 3), 5), Some(2));
        assert_eq!(vp_rational(&rat(2, 125), 5), Some(-3));
    }

    #[test]
    fn big_logs() {
        let n = BigInt::from(10).pow(400);
        assert!((ln_bigint(&n) - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!((ln_bigint(&BigInt::from(-8)) - 8f64.ln()).abs() < 1e-15);
    }
}
