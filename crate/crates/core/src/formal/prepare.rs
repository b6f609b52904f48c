//! Weierstrass preparation over ℤ_p mod p^N.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::padic::ZpMod;
use crate::series::{CoeffRing, Series1};

use super::FormalError;

/// f = u·F with F monic of degree s, all lower coefficients divisible by p.
#[derive(Clone, Debug)]
pub struct Preparation {
    pub s: usize,
    /// Coefficients of F, lowest degree first; `distinguished[s] = 1`.
    pub distinguished: Vec<BigInt>,
    /// The unit u mod T^{D+1−s}; f mod T^{D+1} determines no more of it.
    pub unit: Series1<ZpMod>,
    /// v = 1/u, with v·f ≡ F mod T^{D+1−s}.
    pub unit_inverse: Series1<ZpMod>,
    pub iterations: usize,
}

/// Index of the first unit coefficient.
pub fn first_unit(f: &Series1<ZpMod>) -> Option<usize> {
    let ring = f.ring();
    f.terms().find(|(_, c)| ring.is_unit(c)).map(|(i, _)| i)
}

/// Prepares f mod T^{D+1}.
///
/// Writes f = P + T^s·U with P ≡ 0 mod p and solves v·U + ⌊v·P / T^s⌋ = 1 by
/// fixed-point iteration; each pass gains at least one p-adic digit because P
/// is divisible by p. Then F = T^s + (v·P mod T^s) and u = 1/v.
pub fn weierstrass_prepare(f: &Series1<ZpMod>, guard_degree: usize) -> Result<Preparation, FormalError> {
    let ring = f.ring().clone();
    let d = guard_degree;
    if f.order() < d + 1 {
        return Err(FormalError::BadInput(format!("series order {} below guard degree {d} + 1", f.order())));
    }
    let f = f.truncate(d + 1);
    let s = first_unit(&f).ok_or(FormalError::NoUnitCoefficient { guard: d })?;
    if 2 * s > d {
        return Err(FormalError::BadInput(format!("distinguished degree {s} exceeds half the guard degree {d}")));
    }
    let low = f.truncate(s);
    let len = d + 1 - s;
    let big_u = drop_low(&f, s, len);
    let u_inv = big_u.inverse()?.truncate(len);
    let mut v = u_inv.clone();
    let cap = 2 * ring.precision() as usize + 8;
    let mut iterations = 0;
    loop {
        iterations += 1;
        let vp = v.mul_to(&low.with_order(len + s), len + s).with_order(len + s);
        let tau = drop_low(&vp, s, len);
        let next = &u_inv - &(&u_inv * &tau);
        if next == v {
            break;
        }
        v = next;
        if iterations >= cap {
            return Err(FormalError::NoConvergence { iterations });
        }
    }
    let vp = v.mul_to(&low.with_order(s), s);
    let mut distinguished = vp.with_order(s).to_dense();
    distinguished.push(ring.one());
    let unit = v.inverse()?;
    Ok(Preparation { s, distinguished, unit, unit_inverse: v, iterations })
}

/// ⌊g / T^s⌋ at the given order.
fn drop_low(g: &Series1<ZpMod>, s: usize, order: usize) -> Series1<ZpMod> {
    Series1::from_terms(g.ring(), order, g.terms().filter(|(i, _)| *i >= s).map(|(i, c)| (i - s, c.clone())))
}

/// Polynomial helpers over ℤ/p^N, coefficients lowest degree first.
pub mod poly {
    use super::*;

    pub fn trim(mut a: Vec<BigInt>) -> Vec<BigInt> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn mul(ring: &ZpMod, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out.iter().map(|c| ring.reduce(c)).collect())
    }

    /// Division by a monic polynomial.
    pub fn divrem_monic(ring: &ZpMod, a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
        let db = b.len() - 1;
        let mut r: Vec<BigInt> = a.to_vec();
        if r.len() <= db {
            return (Vec::new(), trim(r));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = ring.reduce(&r[k + db]);
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        (trim(q), trim(r.iter().map(|c| ring.reduce(c)).collect()))
    }

    /// Least coefficient valuation; `None` when every coefficient is zero mod p^N.
    pub fn min_valuation(ring: &ZpMod, a: &[BigInt]) -> Option<u32> {
        a.iter().filter_map(|c| ring.valuation(c)).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zp() -> ZpMod {
        ZpMod::new(5, 30)
    }

    fn series(ring: &ZpMod, order: usize, c: &[i64]) -> Series1<ZpMod> {
        Series1::from_dense(ring, order, c.iter().map(|&x| ring.from_i64(x)).collect())
    }

    #[test]
    fn already_distinguished() {
        let r = zp();
        let f = series(&r, 9, &[0, 5, 1]);
        let prep = weierstrass_prepare(&f, 8).unwrap();
        assert_eq!(prep.s, 2);
        assert_eq!(prep.distinguished, vec![r.zero(), r.from_i64(5), r.one()]);
        assert_eq!(prep.unit, Series1::one(&r, 7));
    }

    #[test]
    fn recovers_known_factor() {
        let r = zp();
        let order = 21;
        let u0 = series(&r, order, &[3, 7, -2, 11, 4, 1, 0, 9, 1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233]);
        let target = series(&r, order, &[5, 5, 1]);
        let f = &u0 * &target;
        let prep = weierstrass_prepare(&f, 20).unwrap();
        // Truncating at T^21 moves the roots (valuation 1/2) by about 21/2 digits.
        let low = ZpMod::new(5, 10);
        let got: Vec<BigInt> = prep.distinguished.iter().map(|c| low.reduce(c)).collect();
        assert_eq!(got, vec![low.from_i64(5), low.from_i64(5), low.one()]);
        let big_f = Series1::from_dense(&r, order, prep.distinguished.clone());
        assert_eq!(&prep.unit * &big_f, f.truncate(19));
        assert_eq!(&prep.unit_inverse * &f, big_f.truncate(19));
    }

    #[test]
    fn no_unit_is_an_error() {
        let r = zp();
        let f = series(&r, 9, &[0, 5, 25, 5]);
        assert!(matches!(weierstrass_prepare(&f, 8), Err(FormalError::NoUnitCoefficient { .. })));
    }

    #[test]
    fn monic_division() {
        let r = zp();
        let a: Vec<BigInt> = [6, 11, 6, 1].iter().map(|&x| r.from_i64(x)).collect();
        let b: Vec<BigInt> = [2, 1].iter().map(|&x| r.from_i64(x)).collect();
        let (q, rem) = poly::divrem_monic(&r, &a, &b);
        assert!(rem.is_empty());
        assert_eq!(q, [3, 4, 1].iter().map(|&x| r.from_i64(x)).collect::<Vec<_>>());
    }
}
