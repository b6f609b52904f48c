//! Capped-precision elements of ℚ_w, the unramified extension of ℚ_p of degree f.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PadicError;
use crate::exact::{vp_int, FiniteField};

/// Shared data for ℤ_w = ℤ_p[x]/(m(x)) at a default absolute precision.
#[derive(Debug, PartialEq, Eq)]
pub struct PadicContext {
    p: u64,
    f: usize,
    precision: i64,
    /// Monic lift of the residue field modulus, lowest degree first.
    modulus: Vec<BigInt>,
    residue: Arc<FiniteField>,
}

impl PadicContext {
    pub fn new(p: u64, f: usize, precision: u32) -> Result<Arc<PadicContext>, PadicError> {
        if precision == 0 {
            return Err(PadicError::BadInput("precision must be positive".into()));
        }
        let residue = FiniteField::new(p, f)?;
        let modulus = residue.modulus().iter().map(|&c| BigInt::from(c)).collect();
        Ok(Arc::new(PadicContext { p, f, precision: precision as i64, modulus, residue }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn degree(&self) -> usize {
        self.f
    }
    pub fn precision(&self) -> i64 {
        self.precision
    }

    fn ppow(&self, e: i64) -> BigInt {
        BigInt::from(self.p).pow(e.max(0) as u32)
    }

    /// Product of two coordinate vectors reduced by the modulus (no p-adic reduction).
    fn poly_mulmod(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let f = self.f;
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..f {
                prod[k - f + j] -= &c * &self.modulus[j];
            }
        }
        prod.truncate(f);
        prod
    }
}

/// p^valuation · unit, known modulo p^precision.
#[derive(Clone)]
pub struct Padic {
    ctx: Arc<PadicContext>,
    /// `None` when the element is zero to its precision.
    valuation: Option<i64>,
    unit: Vec<BigInt>,
    precision: i64,
}

impl fmt::Debug for Padic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.valuation {
            None => write!(f, "O({}^{})", self.ctx.p, self.precision),
            Some(v) => write!(f, "{}^{}·{:?} + O({}^{})", self.ctx.p, v, self.unit, self.ctx.p, self.precision),
        }
    }
}

impl Padic {
    /// Normal form of p^shift · coords known mod p^precision.
    fn normalize(ctx: &Arc<PadicContext>, shift: i64, coords: Vec<BigInt>, precision: i64) -> Padic {
        let rel = precision - shift;
        let zero = Padic { ctx: Arc::clone(ctx), valuation: None, unit: Vec::new(), precision };
        if rel <= 0 {
            return zero;
        }
        let m = ctx.ppow(rel);
        let coords: Vec<BigInt> = coords.iter().map(|c| c.mod_floor(&m)).collect();
        let k = coords
            .iter()
            .filter(|c| !c.is_zero())
            .map(|c| vp_int(c, ctx.p).expect("prime").finite().expect("nonzero") as i64)
            .min();
        let Some(k) = k else { return zero };
        let div = ctx.ppow(k);
        let m2 = ctx.ppow(rel - k);
        let unit = coords.iter().map(|c| (c / &div).mod_floor(&m2)).collect();
        Padic { ctx: Arc::clone(ctx), valuation: Some(shift + k), unit, precision }
    }

    pub fn zero(ctx: &Arc<PadicContext>) -> Padic {
        Padic { ctx: Arc::clone(ctx), valuation: None, unit: Vec::new(), precision: ctx.precision }
    }

    pub fn one(ctx: &Arc<PadicContext>) -> Padic {
        Padic::from_int(ctx, &BigInt::one())
    }

    pub fn from_int(ctx: &Arc<PadicContext>, n: &BigInt) -> Padic {
        let mut coords = vec![BigInt::zero(); ctx.f];
        coords[0] = n.clone();
        Padic::normalize(ctx, 0, coords, ctx.precision)
    }

    pub fn from_i64(ctx: &Arc<PadicContext>, n: i64) -> Padic {
        Padic::from_int(ctx, &BigInt::from(n))
    }

    /// Element with integer coordinates w.r.t. 1, x, …, x^{f−1}.
    pub fn from_coords(ctx: &Arc<PadicContext>, coords: &[BigInt]) -> Result<Padic, PadicError> {
        if coords.len() != ctx.f {
            return Err(PadicError::BadInput(format!("expected {} coordinates", ctx.f)));
        }
        Ok(Padic::normalize(ctx, 0, coords.to_vec(), ctx.precision))
    }

    pub fn from_rational(ctx: &Arc<PadicContext>, q: &BigRational) -> Padic {
        let vn = vp_int(q.numer(), ctx.p).expect("prime").finite().unwrap_or(0) as i64;
        let vd = vp_int(q.denom(), ctx.p).expect("prime").finite().unwrap_or(0) as i64;
        // Both integers are exact; compute with slack, then cap at the default.
        let slack = ctx.precision + 2 * vd + vn + 2;
        let num = Padic::from_int_at(ctx, q.numer(), slack);
        let den = Padic::from_int_at(ctx, q.denom(), slack);
        num.try_div(&den).expect("exact denominator").capped(ctx.precision)
    }

    fn from_int_at(ctx: &Arc<PadicContext>, n: &BigInt, precision: i64) -> Padic {
        let mut coords = vec![BigInt::zero(); ctx.f];
        coords[0] = n.clone();
        Padic::normalize(ctx, 0, coords, precision)
    }

    /// The same value known only modulo p^precision (never raises precision).
    pub fn capped(&self, precision: i64) -> Padic {
        let prec = self.precision.min(precision);
        let base = self.valuation.unwrap_or(prec).min(prec);
        Padic::normalize(&self.ctx, base, self.shifted_coords(base), prec)
    }

    pub fn context(&self) -> &Arc<PadicContext> {
        &self.ctx
    }

    pub fn valuation(&self) -> Option<i64> {
        self.valuation
    }

    /// Absolute precision: the element is known modulo p^precision.
    pub fn precision(&self) -> i64 {
        self.precision
    }

    pub fn unit_part(&self) -> &[BigInt] {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.valuation.is_none()
    }

    /// Coordinates of the represented value when it is integral.
    pub fn to_coords(&self) -> Option<Vec<BigInt>> {
        match self.valuation {
            None => Some(vec![BigInt::zero(); self.ctx.f]),
            Some(v) if v >= 0 => {
                let s = self.ctx.ppow(v);
                Some(self.unit.iter().map(|c| c * &s).collect())
            }
            Some(_) => None,
        }
    }

    fn same_ctx(&self, other: &Padic) -> Result<(), PadicError> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx == other.ctx {
            Ok(())
        } else {
            Err(PadicError::ContextMismatch)
        }
    }

    fn shifted_coords(&self, base: i64) -> Vec<BigInt> {
        match self.valuation {
            None => vec![BigInt::zero(); self.ctx.f],
            Some(v) => {
                let s = self.ctx.ppow(v - base);
                self.unit.iter().map(|c| c * &s).collect()
            }
        }
    }

    pub fn try_add(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.same_ctx(other)?;
        let prec = self.precision.min(other.precision);
        let base = [self.valuation, other.valuation].into_iter().flatten().min().unwrap_or(prec).min(prec);
        let a = self.shifted_coords(base);
        let b = other.shifted_coords(base);
        let sum = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Ok(Padic::normalize(&self.ctx, base, sum, prec))
    }

    pub fn neg(&self) -> Padic {
        let m = self.ctx.ppow(self.precision - self.valuation.unwrap_or(self.precision));
        Padic { unit: self.unit.iter().map(|c| (-c).mod_floor(&m)).collect(), ..self.clone() }
    }

    pub fn try_sub(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.same_ctx(other)?;
        match (self.valuation, other.valuation) {
            (Some(va), Some(vb)) => {
                let prec = (va + other.precision).min(vb + self.precision);
                let prod = self.ctx.poly_mulmod(&self.unit, &other.unit);
                Ok(Padic::normalize(&self.ctx, va + vb, prod, prec))
            }
            (va, vb) => {
                let prec = match (va, vb) {
                    (None, Some(v)) => self.precision + v,
                    (Some(v), None) => other.precision + v,
                    _ => self.precision + other.precision,
                };
                Ok(Padic { ctx: Arc::clone(&self.ctx), valuation: None, unit: Vec::new(), precision: prec })
            }
        }
    }

    /// Multiplicative inverse; fails when the element is zero to its precision.
    pub fn inv(&self) -> Result<Padic, PadicError> {
        let v = self.valuation.ok_or(PadicError::PrecisionExhausted)?;
        let rel = self.precision - v;
        let ctx = &self.ctx;
        let residue: Vec<u64> = self
            .unit
            .iter()
            .map(|c| c.mod_floor(&BigInt::from(ctx.p)).try_into().expect("residue"))
            .collect();
        let inv0 = ctx.residue.element(&residue).inv().map_err(|_| PadicError::PrecisionExhausted)?;
        let mut y: Vec<BigInt> = inv0.coords().iter().map(|&c| BigInt::from(c)).collect();
        let mut known = 1;
        while known < rel {
            known = (known * 2).min(rel);
            let m = ctx.ppow(known);
            let uy = ctx.poly_mulmod(&self.unit, &y);
            let mut two_minus: Vec<BigInt> = uy.iter().map(|c| -c).collect();
            two_minus[0] += 2;
            y = ctx.poly_mulmod(&y, &two_minus).iter().map(|c| c.mod_floor(&m)).collect();
        }
        Ok(Padic::normalize(ctx, -v, y, -v + rel))
    }

    pub fn try_div(&self, other: &Padic) -> Result<Padic, PadicError> {
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Padic {
        let mut acc = Padic::one(&self.ctx);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        acc
    }

    /// Equality of the represented values at the smaller of the two precisions.
    pub fn agrees_with(&self, other: &Padic) -> bool {
        self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

macro_rules! padic_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Padic> for &Padic {
            type Output = Padic;
            fn $m(self, rhs: &Padic) -> Padic {
                self.$f(rhs).expect("p-adic operands from different contexts")
            }
        }
    };
}
padic_op!(Add, add, try_add);
padic_op!(Sub, sub, try_sub);
padic_op!(Mul, mul, try_mul);

impl Neg for &Padic {
    type Output = Padic;
    fn neg(self) -> Padic {
        Padic::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, f: usize, n: u32) -> Arc<PadicContext> {
        PadicContext::new(p, f, n).unwrap()
    }

    #[test]
    fn small_products() {
        let c = ctx(5, 1, 10);
        let x = &Padic::from_i64(&c, 6) * &Padic::from_i64(&c, 4);
        assert!(x.agrees_with(&Padic::from_i64(&c, 24)));
        let u = Padic::from_i64(&c, 7);
        assert_eq!((&Padic::from_i64(&c, 5) * &u).valuation(), Some(1));
    }

    #[test]
    fn geometric_inverse() {
        let c = ctx(5, 1, 12);
        let inv = Padic::from_i64(&c, 1 - 5).inv().unwrap();
        let series: BigInt = (0..12).map(|i| BigInt::from(5).pow(i)).sum();
        assert!(inv.agrees_with(&Padic::from_int(&c, &series)));
        assert_eq!(inv.precision(), 12);
    }

    #[test]
    fn negative_valuations() {
        let c = ctx(5, 1, 10);
        let x = Padic::from_rational(&c, &BigRational::new(3.into(), 25.into()));
        assert_eq!(x.valuation(), Some(-2));
        let back = &x * &Padic::from_i64(&c, 25);
        assert!(back.agrees_with(&Padic::from_i64(&c, 3)));
    }

    #[test]
    fn extension_inverse() {
        let c = ctx(5, 2, 8);
        let x = Padic::from_coords(&c, &[BigInt::from(3), BigInt::from(7)]).unwrap();
        let y = x.inv().unwrap();
        assert!((&x * &y).agrees_with(&Padic::one(&c)));
    }

    #[test]
    fn precision_loss_on_cancellation() {
        let c = ctx(5, 1, 10);
        let a = Padic::from_i64(&c, 1);
        let b = Padic::from_i64(&c, 1 + 5i64.pow(9));
        let d = &b - &a;
        assert_eq!(d.valuation(), Some(9));
        assert_eq!(d.precision(), 10);
        // Dividing by it leaves a single digit of relative precision.
        let q = Padic::one(&c).try_div(&d).unwrap();
        assert_eq!(q.valuation(), Some(-9));
        assert_eq!(q.precision() - q.valuation().unwrap(), 1);
        let z = &a - &a;
        assert!(matches!(z.inv(), Err(PadicError::PrecisionExhausted)));
    }

    #[test]
    fn context_mismatch() {
        let a = Padic::one(&ctx(5, 1, 10));
        let b = Padic::one(&ctx(7, 1, 10));
        assert!(matches!(a.try_add(&b), Err(PadicError::ContextMismatch)));
    }
}
