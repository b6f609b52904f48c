//! Coefficient rings for truncated series.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// Which kind of coefficients a series carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Domain {
    Rational,
    Padic { p: u64, precision: u32 },
}

/// A commutative ring given as an object; elements are plain values.
///
/// Keeping the ring separate from its elements lets capped p-adic residues be
/// bare integers instead of carrying a context pointer each.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    /// Accumulator for sums of products.
    type Acc: Send;

    fn domain(&self) -> Domain;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// `None` when the denominator is not invertible in the ring.
    fn from_rational(&self, q: &BigRational) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `None` for non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn acc_new(&self) -> Self::Acc;
    fn acc_mul_add(&self, acc: &mut Self::Acc, a: &Self::Elem, b: &Self::Elem);
    fn acc_finish(&self, acc: Self::Acc) -> Self::Elem;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }
}

/// ℚ with exact rational coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl CoeffRing for Rationals {
    type Elem = BigRational;
    type Acc = BigRational;

    fn domain(&self) -> Domain {
        Domain::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Option<BigRational> {
        Some(q.clone())
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn acc_new(&self) -> BigRational {
        BigRational::zero()
    }
    fn acc_mul_add(&self, acc: &mut BigRational, a: &BigRational, b: &BigRational) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        if a.is_integer() && b.is_integer() && acc.is_integer() {
            *acc = BigRational::from_integer(acc.numer() + a.numer() * b.numer());
        } else {
            *acc += a * b;
        }
    }
    fn acc_finish(&self, acc: BigRational) -> BigRational {
        acc
    }
}

/// 𝔽_p with machine-word residues; the fast path for reductions mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// `p` must be a prime below 2^32.
    pub fn new(p: u64) -> PrimeField {
        assert!(crate::exact::is_prime(p) && p < (1 << 32), "PrimeField needs a prime below 2^32");
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
}

impl CoeffRing for PrimeField {
    type Elem = u64;
    type Acc = u128;

    fn domain(&self) -> Domain {
        Domain::Padic { p: self.p, precision: 1 }
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        let r = n % BigInt::from(self.p);
        let r: i64 = r.try_into().expect("residue fits");
        r.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Option<u64> {
        crate::exact::reduce_mod_p(q, self.p)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| crate::exact::fp_poly::invmod(*a, self.p))
    }
    fn acc_new(&self) -> u128 {
        0
    }
    fn acc_mul_add(&self, acc: &mut u128, a: &u64, b: &u64) {
        // Residues are below 2^32, so 2^63 products fit before a reduction is needed.
        *acc += (*a as u128) * (*b as u128);
    }
    fn acc_finish(&self, acc: u128) -> u64 {
        (acc % self.p as u128) as u64
    }
}
