//! One-variable truncated series.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{CoeffRing, SeriesError};

/// Work threshold (term pairs) above which products run in parallel.
const PAR_PRODUCT_WORK: usize = 1 << 16;

/// Σ c_i T^i for i < order, zero coefficients omitted.
#[derive(Clone, Debug)]
pub struct Series1<R: CoeffRing> {
    ring: R,
    order: usize,
    coeffs: BTreeMap<usize, R::Elem>,
}

impl<R: CoeffRing> PartialEq for Series1<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<R: CoeffRing> Series1<R> {
    pub fn zero(ring: &R, order: usize) -> Self {
        Series1 { ring: ring.clone(), order, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(ring: &R, order: usize, terms: impl IntoIterator<Item = (usize, R::Elem)>) -> Self {
        let mut s = Series1::zero(ring, order);
        for (i, c) in terms {
            if i < order {
                let sum = ring.add(&s.coeff(i), &c);
                s.set(i, sum);
            }
        }
        s
    }

    /// From a dense coefficient list, lowest degree first.
    pub fn from_dense(ring: &R, order: usize, dense: Vec<R::Elem>) -> Self {
        Series1::from_terms(ring, order, dense.into_iter().enumerate())
    }

    pub fn from_i64s(ring: &R, order: usize, c: &[i64]) -> Self {
        Series1::from_terms(ring, order, c.iter().enumerate().map(|(i, &x)| (i, ring.from_i64(x))))
    }

    pub fn monomial(ring: &R, order: usize, c: R::Elem, k: usize) -> Self {
        Series1::from_terms(ring, order, [(k, c)])
    }

    pub fn one(ring: &R, order: usize) -> Self {
        Series1::monomial(ring, order, ring.one(), 0)
    }

    /// The series T.
    pub fn var(ring: &R, order: usize) -> Self {
        Series1::monomial(ring, order, ring.one(), 1)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, i: usize) -> R::Elem {
        self.coeffs.get(&i).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn coeff_ref(&self, i: usize) -> Option<&R::Elem> {
        self.coeffs.get(&i)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &R::Elem)> {
        self.coeffs.iter().map(|(&i, c)| (i, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn set(&mut self, i: usize, c: R::Elem) {
        if i >= self.order {
            return;
        }
        if self.ring.is_zero(&c) {
            self.coeffs.remove(&i);
        } else {
            self.coeffs.insert(i, c);
        }
    }

    pub fn to_dense(&self) -> Vec<R::Elem> {
        (0..self.order).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.keys().next().copied()
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Series1 {
            ring: self.ring.clone(),
            order,
            coeffs: self.coeffs.range(..order).map(|(&i, c)| (i, c.clone())).collect(),
        }
    }

    /// Reinterprets the series at a new order: truncates, or pads with zeros.
    pub fn with_order(&self, order: usize) -> Self {
        let mut out = self.truncate(order);
        out.order = order;
        out
    }

    fn check(&self, other: &Self) -> Result<(), SeriesError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(SeriesError::DomainMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        let mut out = self.truncate(other.order);
        for (&i, c) in other.coeffs.range(..out.order) {
            let s = self.ring.add(&out.coeff(i), c);
            out.set(i, s);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Series1 {
            ring: self.ring.clone(),
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&i, c)| (i, self.ring.neg(c))).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Series1::zero(&self.ring, self.order);
        for (&i, a) in &self.coeffs {
            out.set(i, self.ring.mul(a, c));
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check(other)?;
        Ok(self.mul_to(other, self.order.min(other.order)))
    }

    /// Product truncated at `order` (at most the operands' orders).
    pub fn mul_to(&self, other: &Self, order: usize) -> Self {
        let order = order.min(self.order).min(other.order);
        let ring = &self.ring;
        let a: Vec<(usize, &R::Elem)> = self.coeffs.range(..order).map(|(&i, c)| (i, c)).collect();
        let mut b_dense: Vec<Option<&R::Elem>> = vec![None; order];
        for (&j, c) in other.coeffs.range(..order) {
            b_dense[j] = Some(c);
        }
        let cell = |k: usize| {
            let mut acc = ring.acc_new();
            let mut any = false;
            for &(i, x) in a.iter().take_while(|(i, _)| *i <= k) {
                if let Some(y) = b_dense[k - i] {
                    ring.acc_mul_add(&mut acc, x, y);
                    any = true;
                }
            }
            any.then(|| ring.acc_finish(acc))
        };
        let work = a.len() * other.coeffs.len();
        let cells: Vec<Option<R::Elem>> = if work >= PAR_PRODUCT_WORK {
            (0..order).into_par_iter().map(cell).collect()
        } else {
            (0..order).map(cell).collect()
        };
        let mut out = Series1::zero(ring, order);
        for (k, c) in cells.into_iter().enumerate() {
            if let Some(c) = c {
                out.set(k, c);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Series1::one(&self.ring, self.order);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_to(&b, self.order);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul_to(&b, self.order);
            }
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be a unit.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let ring = &self.ring;
        let c0 = self.coeff(0);
        let inv0 = ring.inv(&c0).ok_or(SeriesError::NotInvertible)?;
        // Newton iteration y ← y(2 − f y), doubling the correct order each pass.
        let mut y = Series1::monomial(ring, self.order, inv0, 0);
        let mut known = 1;
        while known < self.order {
            known = (2 * known).min(self.order);
            y = y.with_order(known);
            let fy = self.truncate(known).mul_to(&y, known);
            let two = Series1::monomial(ring, known, ring.from_i64(2), 0);
            let corr = two.try_sub(&fy)?;
            y = y.mul_to(&corr, known);
        }
        Ok(y.with_order(self.order))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self, SeriesError> {
        self.try_mul(&other.inverse()?)
    }

    /// Divides by T^k; the dropped coefficients must be zero. Order drops by k.
    pub fn shift_down(&self, k: usize) -> Result<Self, SeriesError> {
        if self.coeffs.range(..k).next().is_some() {
            return Err(SeriesError::NotDivisible);
        }
        let order = self.order.saturating_sub(k);
        Ok(Series1 {
            ring: self.ring.clone(),
            order,
            coeffs: self.coeffs.range(k..).map(|(&i, c)| (i - k, c.clone())).collect(),
        })
    }

    /// Multiplies by T^k at the same order.
    pub fn shift_up(&self, k: usize) -> Self {
        Series1 {
            ring: self.ring.clone(),
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&i, _)| i + k < self.order)
                .map(|(&i, c)| (i + k, c.clone()))
                .collect(),
        }
    }

    pub fn derivative(&self) -> Self {
        let mut out = Series1::zero(&self.ring, self.order.saturating_sub(1));
        for (&i, c) in self.coeffs.range(1..) {
            out.set(i - 1, self.ring.mul(c, &self.ring.from_i64(i as i64)));
        }
        out
    }

    /// self(inner); `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        self.check(inner)?;
        if inner.coeff_ref(0).is_some() {
            return Err(SeriesError::NonzeroConstant);
        }
        let order = self.order.min(inner.order);
        // Horner from the top degree.
        let mut acc = Series1::zero(&self.ring, order);
        for i in (0..order).rev() {
            acc = acc.mul_to(inner, order);
            let c = self.ring.add(&acc.coeff(0), &self.coeff(i));
            acc.set(0, c);
        }
        Ok(acc)
    }

    /// Compositional inverse r with self(r) ≡ T; needs zero constant and unit linear term.
    pub fn reversion(&self) -> Result<Self, SeriesError> {
        if self.coeff_ref(0).is_some() {
            return Err(SeriesError::NonzeroConstant);
        }
        let ring = &self.ring;
        let c1inv = ring.inv(&self.coeff(1)).ok_or(SeriesError::NotInvertible)?;
        let order = self.order;
        let t = Series1::var(ring, order);
        let deriv = self.derivative();
        // Newton: r ← r − (g(r) − T)/g'(r).
        let mut r = Series1::monomial(ring, order, c1inv, 1);
        let mut known = 2;
        while known < order {
            known = (2 * known).min(order);
            r = r.with_order(known);
            let g_r = self.truncate(known).compose(&r)?;
            let resid = g_r.try_sub(&t.truncate(known))?;
            // g' is known one order short; the missing term only affects degrees ≥ known.
            let dg_r = deriv.with_order(known).compose(&r)?;
            let step = resid.try_div(&dg_r)?;
            r = r.try_sub(&step)?;
        }
        Ok(r.with_order(order))
    }

    /// Coefficient-wise image in another ring.
    pub fn map_ring<S: CoeffRing>(
        &self,
        target: &S,
        f: impl Fn(&R::Elem) -> Option<S::Elem>,
    ) -> Option<Series1<S>> {
        let mut out = Series1::zero(target, self.order);
        for (&i, c) in &self.coeffs {
            out.set(i, f(c)?);
        }
        Some(out)
    }
}

macro_rules! series_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl<R: CoeffRing> std::ops::$tr<&Series1<R>> for &Series1<R> {
            type Output = Series1<R>;
            fn $m(self, rhs: &Series1<R>) -> Series1<R> {
                self.$f(rhs).expect("series over different coefficient rings")
            }
        }
    };
}
series_op!(Add, add, try_add);
series_op!(Sub, sub, try_sub);
series_op!(Mul, mul, try_mul);

impl<R: CoeffRing> std::ops::Neg for &Series1<R> {
    type Output = Series1<R>;
    fn neg(self) -> Series1<R> {
        Series1::neg(self)
    }
}
