//! Finite fields 𝔽_{p^f} with a deterministic modulus.

use std::fmt;
use std::sync::Arc;

use super::fp_poly as fp;
use super::{is_prime, ExactError, MAX_FIELD_SIZE};

/// 𝔽_{p^f} = 𝔽_p[x]/(m(x)).
///
/// `m` is the first monic irreducible of degree `f` when the non-leading
/// coefficients `c_0, …, c_{f−1}` are read as the base-p integer Σ c_i p^i.
#[derive(Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    f: usize,
    modulus: Vec<u64>,
}

impl FiniteField {
    pub fn new(p: u64, f: usize) -> Result<Arc<FiniteField>, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        if f == 0 {
            return Err(ExactError::OutOfRange("extension degree must be ≥ 1".into()));
        }
        let size = field_size(p, f)?;
        if size > MAX_FIELD_SIZE {
            return Err(ExactError::DeskBound(format!(
                "p^f = {p}^{f} exceeds the limit {MAX_FIELD_SIZE}"
            )));
        }
        Ok(Arc::new(FiniteField { p, f, modulus: smallest_irreducible(p, f) }))
    }

    /// A field with a caller-supplied monic modulus, checked for irreducibility.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Arc<FiniteField>, ExactError> {
        if !is_prime(p) {
            return Err(ExactError::NotPrime(p));
        }
        let mut m: Vec<u64> = modulus.iter().map(|c| c % p).collect();
        fp::trim(&mut m);
        let f = fp::degree(&m).unwrap_or(0);
        if f == 0 || m[f] != 1 || !fp::is_irreducible(&m, p) {
            return Err(ExactError::Reducible);
        }
        Ok(Arc::new(FiniteField { p, f, modulus: m }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.f
    }

    /// Monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.f as u32)
    }

    pub fn zero(self: &Arc<Self>) -> FqElement {
        FqElement { field: Arc::clone(self), coeffs: vec![0; self.f] }
    }

    pub fn one(self: &Arc<Self>) -> FqElement {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, n: i64) -> FqElement {
        let mut e = self.zero();
        e.coeffs[0] = n.rem_euclid(self.p as i64) as u64;
        e
    }

    /// Element from coordinates w.r.t. 1, x, …, x^{f−1}; extra entries are reduced.
    pub fn element(self: &Arc<Self>, coords: &[u64]) -> FqElement {
        let mut v: Vec<u64> = coords.iter().map(|c| c % self.p).collect();
        fp::trim(&mut v);
        let mut r = fp::rem(&v, &self.modulus, self.p);
        r.resize(self.f, 0);
        FqElement { field: Arc::clone(self), coeffs: r }
    }

    /// The element whose coordinates are the base-p digits of `index`.
    pub fn element_by_index(self: &Arc<Self>, mut index: u64) -> FqElement {
        let mut coords = vec![0; self.f];
        for c in coords.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        FqElement { field: Arc::clone(self), coeffs: coords }
    }

    /// All elements, in index order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FqElement> + '_ {
        (0..self.size()).map(move |i| self.element_by_index(i))
    }
}

fn field_size(p: u64, f: usize) -> Result<u64, ExactError> {
    u32::try_from(f)
        .ok()
        .and_then(|f| p.checked_pow(f))
        .ok_or_else(|| ExactError::DeskBound(format!("{p}^{f} overflows")))
}

fn smallest_irreducible(p: u64, f: usize) -> Vec<u64> {
    let mut k: u64 = 0;
    loop {
        let mut m = Vec::with_capacity(f + 1);
        let mut t = k;
        for _ in 0..f {
            m.push(t % p);
            t /= p;
        }
        m.push(1);
        if fp::is_irreducible(&m, p) {
            return m;
        }
        k += 1;
    }
}

/// An element of 𝔽_{p^f}.
#[derive(Clone, PartialEq, Eq)]
pub struct FqElement {
    field: Arc<FiniteField>,
    coeffs: Vec<u64>,
}

impl fmt::Debug for FqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({}^{}){:?}", self.field.p, self.field.f, self.coeffs)
    }
}

impl FqElement {
    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn coords(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check(&self, other: &FqElement) -> Result<(), ExactError> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(ExactError::FieldMismatch)
        }
    }

    fn wrap(&self, mut v: Vec<u64>) -> FqElement {
        v.resize(self.field.f, 0);
        FqElement { field: Arc::clone(&self.field), coeffs: v }
    }

    pub fn try_add(&self, other: &FqElement) -> Result<FqElement, ExactError> {
        self.check(other)?;
        let p = self.field.p;
        let v = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + b) % p).collect();
        Ok(FqElement { field: Arc::clone(&self.field), coeffs: v })
    }

    pub fn try_sub(&self, other: &FqElement) -> Result<FqElement, ExactError> {
        self.check(other)?;
        let p = self.field.p;
        let v = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a + p - b) % p).collect();
        Ok(FqElement { field: Arc::clone(&self.field), coeffs: v })
    }

    pub fn try_mul(&self, other: &FqElement) -> Result<FqElement, ExactError> {
        self.check(other)?;
        let p = self.field.p;
        if self.field.f == 1 {
            return Ok(self.wrap(vec![fp::mulmod(self.coeffs[0], other.coeffs[0], p)]));
        }
        let prod = fp::mul(&self.coeffs, &other.coeffs, p);
        Ok(self.wrap(fp::rem(&prod, &self.field.modulus, p)))
    }

    pub fn neg(&self) -> FqElement {
        let p = self.field.p;
        self.wrap(self.coeffs.iter().map(|&a| (p - a) % p).collect())
    }

    pub fn pow(&self, exp: u64) -> FqElement {
        let p = self.field.p;
        if self.field.f == 1 {
            return self.wrap(vec![fp::powmod(self.coeffs[0], exp, p)]);
        }
        let mut v = self.coeffs.clone();
        fp::trim(&mut v);
        self.wrap(fp::powrem(&v, exp, &self.field.modulus, p))
    }

    pub fn inv(&self) -> Result<FqElement, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(self.pow(self.field.size() - 2))
    }

    pub fn try_div(&self, other: &FqElement) -> Result<FqElement, ExactError> {
        self.try_mul(&other.inv()?)
    }

    /// Quadratic character: 0, 1 or −1 (p odd).
    pub fn quadratic_character(&self) -> i8 {
        if self.is_zero() {
            return 0;
        }
        let e = self.pow((self.field.size() - 1) / 2);
        if e == self.field.one() {
            1
        } else {
            -1
        }
    }
}

macro_rules! fq_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&FqElement> for &FqElement {
            type Output = FqElement;
            /// Panics on mismatched fields; use the `try_` form to handle that case.
            fn $m(self, rhs: &FqElement) -> FqElement {
                self.$f(rhs).expect("operands from different finite fields")
            }
        }
    };
}
fq_op!(Add, add, try_add);
fq_op!(Sub, sub, try_sub);
fq_op!(Mul, mul, try_mul);
