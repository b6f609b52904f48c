//! Weierstrass curves over ℚ and their rational points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::CurveError;
use crate::exact::{rat_int, vp_rational};

/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over ℚ.
#[derive(Clone, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a1: BigRational,
    pub a2: BigRational,
    pub a3: BigRational,
    pub a4: BigRational,
    pub a6: BigRational,
    pub b2: BigRational,
    pub b4: BigRational,
    pub b6: BigRational,
    pub b8: BigRational,
    pub c4: BigRational,
    pub c6: BigRational,
    pub discriminant: BigRational,
    pub j_invariant: BigRational,
}

impl fmt::Debug for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}, {}]", self.a1, self.a2, self.a3, self.a4, self.a6)
    }
}

impl WeierstrassCurve {
    pub fn new(a: [BigRational; 5]) -> Result<WeierstrassCurve, CurveError> {
        let [a1, a2, a3, a4, a6] = a;
        let two = rat_int(2);
        let four = rat_int(4);
        let b2 = &a1 * &a1 + &four * &a2;
        let b4 = &two * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + &four * &a6;
        let b8 = &a1 * &a1 * &a6 + &four * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        let c4 = &b2 * &b2 - rat_int(24) * &b4;
        let c6 = -(&b2 * &b2 * &b2) + rat_int(36) * &b2 * &b4 - rat_int(216) * &b6;
        let discriminant = -(&b2 * &b2 * &b8) - rat_int(8) * &b4 * &b4 * &b4 - rat_int(27) * &b6 * &b6
            + rat_int(9) * &b2 * &b4 * &b6;
        if discriminant.is_zero() {
            return Err(CurveError::Singular);
        }
        let j_invariant = &c4 * &c4 * &c4 / &discriminant;
        Ok(WeierstrassCurve { a1, a2, a3, a4, a6, b2, b4, b6, b8, c4, c6, discriminant, j_invariant })
    }

    pub fn from_ints(a: [i64; 5]) -> Result<WeierstrassCurve, CurveError> {
        WeierstrassCurve::new(a.map(rat_int))
    }

    /// y² = x³ + A·x + B.
    pub fn short(a: BigRational, b: BigRational) -> Result<WeierstrassCurve, CurveError> {
        let z = BigRational::zero;
        WeierstrassCurve::new([z(), z(), z(), a, b])
    }

    pub fn a_invariants(&self) -> [&BigRational; 5] {
        [&self.a1, &self.a2, &self.a3, &self.a4, &self.a6]
    }

    pub fn is_short(&self) -> bool {
        self.a1.is_zero() && self.a2.is_zero() && self.a3.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.a_invariants().iter().all(|a| a.is_integer())
    }

    /// v_p(Δ) = 0 and all a_i are p-integral.
    pub fn has_good_reduction(&self, p: u64) -> bool {
        self.is_p_integral(p) && vp_rational(&self.discriminant, p) == Some(0)
    }

    pub fn is_p_integral(&self, p: u64) -> bool {
        self.a_invariants().iter().all(|a| a.is_zero() || vp_rational(a, p).is_some_and(|v| v >= 0))
    }

    /// Primes dividing the numerator of Δ (the model's bad primes when integral).
    pub fn bad_primes(&self) -> Vec<u64> {
        let mut n = self.discriminant.numer().abs() * self.discriminant.denom();
        let mut out = Vec::new();
        let mut d = 2u64;
        while BigInt::from(d) * BigInt::from(d) <= n {
            let bd = BigInt::from(d);
            if (&n % &bd).is_zero() {
                out.push(d);
                while (&n % &bd).is_zero() {
                    n /= &bd;
                }
            }
            d += 1;
        }
        if n > BigInt::one() {
            out.push(u64::try_from(&n).expect("cofactor fits u64"));
        }
        out
    }

    pub fn contains(&self, x: &BigRational, y: &BigRational) -> bool {
        let lhs = y * y + &self.a1 * x * y + &self.a3 * y;
        let rhs = x * x * x + &self.a2 * x * x + &self.a4 * x + &self.a6;
        lhs == rhs
    }

    pub fn point(&self, x: BigRational, y: BigRational) -> Result<CurvePoint, CurveError> {
        if self.contains(&x, &y) {
            Ok(CurvePoint::Affine { x, y })
        } else {
            Err(CurveError::NotOnCurve)
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x: x.clone(),
                y: -y - &self.a1 * x - &self.a3,
            },
        }
    }

    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let (x1, y1, x2, y2) = match (p, q) {
            (CurvePoint::Infinity, _) => return q.clone(),
            (_, CurvePoint::Infinity) => return p.clone(),
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => (x1, y1, x2, y2),
        };
        let lambda = if x1 != x2 {
            (y2 - y1) / (x2 - x1)
        } else {
            let denom = y1 + y2 + &self.a1 * x2 + &self.a3;
            if denom.is_zero() {
                return CurvePoint::Infinity;
            }
            (rat_int(3) * x1 * x1 + rat_int(2) * &self.a2 * x1 + &self.a4 - &self.a1 * y1) / denom
        };
        let nu = y1 - &lambda * x1;
        let x3 = &lambda * &lambda + &self.a1 * &lambda - &self.a2 - x1 - x2;
        let y3 = -(&lambda + &self.a1) * &x3 - nu - &self.a3;
        CurvePoint::Affine { x: x3, y: y3 }
    }

    pub fn double(&self, p: &CurvePoint) -> CurvePoint {
        self.add(p, p)
    }

    pub fn sub(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        self.add(p, &self.neg(q))
    }

    /// [m]P by double-and-add.
    pub fn mul(&self, p: &CurvePoint, m: i64) -> CurvePoint {
        let base = if m < 0 { self.neg(p) } else { p.clone() };
        let mut k = m.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &b);
            }
            k >>= 1;
            if k > 0 {
                b = self.double(&b);
            }
        }
        acc
    }

    /// Order of P if it is at most `bound`.
    pub fn torsion_order(&self, p: &CurvePoint, bound: u32) -> Option<u32> {
        let mut q = p.clone();
        for n in 1..=bound {
            if q.is_infinity() {
                return Some(n);
            }
            q = self.add(&q, p);
        }
        None
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CurvePoint {
    Infinity,
    Affine { x: BigRational, y: BigRational },
}

impl CurvePoint {
    pub fn is_infinity(&self) -> bool {
        matches!(self, CurvePoint::Infinity)
    }

    pub fn x(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { x, .. } => Some(x),
        }
    }

    pub fn y(&self) -> Option<&BigRational> {
        match self {
            CurvePoint::Infinity => None,
            CurvePoint::Affine { y, .. } => Some(y),
        }
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x}, {y})"),
        }
    }
}
