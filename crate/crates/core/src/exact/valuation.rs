//! p-adic valuations of integers and binomial coefficients.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{is_prime, ExactError};

/// A valuation value: a nonnegative integer, or infinity for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Valuation {
    Finite(u64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// v(ab) = v(a) + v(b).
impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "INFINITY"),
        }
    }
}

fn require_prime(p: u64) -> Result<(), ExactError> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(ExactError::NotPrime(p))
    }
}

/// Exponent of `p` in `n`.
pub fn vp_int(n: &BigInt, p: u64) -> Result<Valuation, ExactError> {
    require_prime(p)?;
    if n.is_zero() {
        return Ok(Valuation::Infinity);
    }
    let bp = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&bp);
        if !r.is_zero() {
            return Ok(Valuation::Finite(v));
        }
        n = q;
        v += 1;
    }
}

/// Exponent of `p` in a machine integer; `None` for zero.
pub fn vp_u64(mut n: u64, p: u64) -> Option<u64> {
    if n == 0 {
        return None;
    }
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    Some(v)
}

/// Legendre's formula: v_p(n!) = Σ ⌊n/p^i⌋.
pub fn legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut k = n;
    while k > 0 {
        k /= p;
        total += k;
    }
    total
}

/// v_p(binom(m, a)) as the number of carries when adding a and m − a in base p.
pub fn vp_binomial_kummer(m: u64, a: u64, p: u64) -> Result<u64, ExactError> {
    require_prime(p)?;
    if a > m {
        return Err(ExactError::OutOfRange(format!("a = {a} exceeds m = {m}")));
    }
    let (mut x, mut y) = (a, m - a);
    let mut carry = 0;
    let mut carries = 0;
    while x > 0 || y > 0 || carry > 0 {
        let digit_sum = x % p + y % p + carry;
        carry = u64::from(digit_sum >= p);
        carries += carry;
        x /= p;
        y /= p;
    }
    Ok(carries)
}

/// Smallest `a ∈ [2, p^m]` with `p^{m+2} ∤ p^a · binom(p^m, a)`, if any.
///
/// Valuations are compared directly, so no big binomials are formed.
pub fn binomial_claim_witness(p: u64, m: u32) -> Result<Option<u64>, ExactError> {
    require_prime(p)?;
    let pm = p
        .checked_pow(m)
        .ok_or_else(|| ExactError::OutOfRange(format!("{p}^{m} overflows")))?;
    for a in 2..=pm {
        let v = a + vp_binomial_kummer(pm, a, p)?;
        if v < u64::from(m) + 2 {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// True when `p^{m+2}` divides `p^a · binom(p^m, a)` for every `2 ≤ a ≤ p^m`.
pub fn binomial_claim_holds(p: u64, m: u32) -> Result<bool, ExactError> {
    Ok(binomial_claim_witness(p, m)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vp_examples() {
        assert_eq!(vp_int(&BigInt::from(250), 5).unwrap(), Valuation::Finite(3));
        assert_eq!(vp_int(&BigInt::from(7), 5).unwrap(), Valuation::Finite(0));
        assert_eq!(vp_int(&BigInt::from(0), 5).unwrap(), Valuation::Infinity);
        assert_eq!(vp_int(&BigInt::from(-50), 5).unwrap(), Valuation::Finite(2));
        assert!(vp_int(&BigInt::from(10), 4).is_err());
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(vp_binomial_kummer(25, 5, 5).unwrap(), 1);
        assert_eq!(vp_binomial_kummer(10, 5, 2).unwrap(), 2);
        assert_eq!(vp_binomial_kummer(17, 0, 3).unwrap(), 0);
        assert!(vp_binomial_kummer(3, 4, 3).is_err());
    }

    #[test]
    fn claim_examples() {
        assert!(binomial_claim_holds(5, 1).unwrap());
        assert!(binomial_claim_holds(5, 2).unwrap());
        assert!(binomial_claim_holds(7, 1).unwrap());
        // p = 2 already fails at the bottom of the range.
        assert_eq!(binomial_claim_witness(2, 1).unwrap(), Some(2));
    }

    #[test]
    fn infinity_ordering() {
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinity);
        assert_eq!(Valuation::Finite(2) + Valuation::Infinity, Valuation::Infinity);
    }
}
