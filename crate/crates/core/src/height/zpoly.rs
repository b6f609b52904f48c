//! Dense polynomials over ℤ, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::QPoly;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly(Vec<BigInt>);

impl IntPoly {
    pub fn new(mut c: Vec<BigInt>) -> IntPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        IntPoly(c)
    }

    pub fn from_i64s(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> IntPoly {
        IntPoly(Vec::new())
    }

    pub fn one() -> IntPoly {
        IntPoly(vec![BigInt::one()])
    }

    /// x^n − 1.
    pub fn x_pow_minus_one(n: usize) -> IntPoly {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        IntPoly(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigInt> {
        self.0.last()
    }

    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> IntPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.lead().unwrap().is_negative() {
            g = -g;
        }
        IntPoly(self.0.iter().map(|c| c / &g).collect())
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        let n = self.0.len().max(o.0.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> IntPoly {
        IntPoly::new(self.0.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// x^deg · f(1/x).
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.0.clone();
        c.reverse();
        IntPoly::new(c)
    }

    /// f(−x).
    pub fn negate_var(&self) -> IntPoly {
        IntPoly::new(self.0.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.0.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn to_qpoly(&self) -> QPoly {
        QPoly::new(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    /// Primitive integer multiple of a rational polynomial.
    pub fn from_qpoly(q: &QPoly) -> IntPoly {
        let den = q.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPoly::new(q.coeffs().iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect())
            .primitive()
    }

    /// Exact division; `None` when the divisor does not divide over ℤ.
    pub fn div_exact(&self, d: &IntPoly) -> Option<IntPoly> {
        let dd = d.degree()?;
        if self.is_zero() {
            return Some(IntPoly::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lead = d.lead().unwrap();
        let mut r = self.0.clone();
        let mut q = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let (c, rem) = r[k + dd].div_rem(lead);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, b) in d.0.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        r.iter().all(Zero::is_zero).then(|| IntPoly::new(q))
    }

    /// Squarefree part, primitive.
    pub fn squarefree(&self) -> IntPoly {
        let f = self.to_qpoly();
        let g = f.gcd(&f.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        IntPoly::from_qpoly(&f.divrem(&g).0)
    }

    pub fn is_squarefree(&self) -> bool {
        let f = self.to_qpoly();
        f.gcd(&f.derivative()).degree().unwrap_or(0) == 0
    }

    /// Euclidean norm of the coefficient vector, rounded up.
    pub fn norm2_ceil(&self) -> BigInt {
        let s: BigInt = self.0.iter().map(|c| c * c).sum();
        let r = s.sqrt();
        if &r * &r == s {
            r
        } else {
            r + 1
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_f64s(&self) -> Vec<f64> {
        self.0.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => {}
                _ => write!(f, "{a}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
