//! ℤ_p modulo p^N as a series coefficient ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::series::{CoeffRing, Domain};

/// Residues mod p^N standing for capped-absolute-precision p-adic integers.
///
/// An element that reduces to zero is only known to have valuation ≥ N.
#[derive(Clone, Debug)]
pub struct ZpMod {
    p: u64,
    precision: u32,
    modulus: Arc<BigInt>,
}

impl PartialEq for ZpMod {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.precision == other.precision
    }
}

impl ZpMod {
    pub fn new(p: u64, precision: u32) -> ZpMod {
        assert!(precision >= 1, "precision must be positive");
        ZpMod { p, precision, modulus: Arc::new(BigInt::from(p).pow(precision)) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }

    pub fn reduce(&self, n: &BigInt) -> BigInt {
        n.mod_floor(&self.modulus)
    }

    /// v_p of a residue; `None` when it is zero to the working precision.
    pub fn valuation(&self, a: &BigInt) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let bp = BigInt::from(self.p);
        let mut n = a.clone();
        let mut v = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            v += 1;
        }
        Some(v)
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        !(a % BigInt::from(self.p)).is_zero()
    }

    /// Representative in (−p^N/2, p^N/2].
    pub fn symmetric(&self, a: &BigInt) -> BigInt {
        let half: BigInt = &*self.modulus >> 1;
        if a > &half {
            a - &*self.modulus
        } else {
            a.clone()
        }
    }

    /// The same residue viewed at a lower precision.
    pub fn with_precision(&self, precision: u32) -> ZpMod {
        ZpMod::new(self.p, precision)
    }
}

impl CoeffRing for ZpMod {
    type Elem = BigInt;
    type Acc = BigInt;

    fn domain(&self) -> Domain {
        Domain::Padic { p: self.p, precision: self.precision }
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        self.reduce(&BigInt::one())
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        self.reduce(n)
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigInt> {
        let den = self.reduce(q.denom());
        let inv = self.inv(&den)?;
        Some(self.mul(&self.reduce(q.numer()), &inv))
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a + b;
        if s >= *self.modulus {
            s - &*self.modulus
        } else {
            s
        }
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        let s = a - b;
        if s.is_negative() {
            s + &*self.modulus
        } else {
            s
        }
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::zero()
        } else {
            &*self.modulus - a
        }
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        (a * b) % &*self.modulus
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigInt) -> Option<BigInt> {
        if !self.is_unit(a) {
            return None;
        }
        let e = a.extended_gcd(&self.modulus);
        Some(e.x.mod_floor(&self.modulus))
    }
    fn acc_new(&self) -> BigInt {
        BigInt::zero()
    }
    fn acc_mul_add(&self, acc: &mut BigInt, a: &BigInt, b: &BigInt) {
        if !a.is_zero() && !b.is_zero() {
            *acc += a * b;
        }
    }
    fn acc_finish(&self, acc: BigInt) -> BigInt {
        acc % &*self.modulus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_arithmetic() {
        let r = ZpMod::new(5, 10);
        let a = r.from_i64(6);
        let b = r.from_i64(4);
        assert_eq!(r.mul(&a, &b), BigInt::from(24));
        assert_eq!(r.valuation(&r.from_i64(250)), Some(3));
        assert_eq!(r.valuation(&r.zero()), None);
        let inv = r.inv(&r.from_i64(2)).unwrap();
        assert_eq!(r.mul(&inv, &r.from_i64(2)), r.one());
        assert!(r.inv(&r.from_i64(10)).is_none());
        assert_eq!(r.from_rational(&BigRational::new(1.into(), 5.into())), None);
        assert_eq!(r.symmetric(&r.from_i64(-3)), BigInt::from(-3));
    }
}
