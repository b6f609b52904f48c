//! Minimal polynomials of α^k, α·β and α+β via resultants.
//!
//! The resultant in y is a polynomial in x; it is evaluated at integer points
//! (fraction-free Bareiss on the Sylvester matrix) and interpolated over ℚ.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::QPoly;

use super::factor::factor;
use super::roots::find_roots;
use super::zpoly::IntPoly;

/// Determinant of an integer matrix by fraction-free elimination.
pub fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Res(f, g) for integer polynomials of positive degree.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    let size = n + m;
    let mut rows = Vec::with_capacity(size);
    for i in 0..m {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in f.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    for i in 0..n {
        let mut row = vec![BigInt::zero(); size];
        for (j, c) in g.coeffs().iter().rev().enumerate() {
            row[i + j] = c.clone();
        }
        rows.push(row);
    }
    bareiss_det(rows)
}

/// Interpolates R(x) of degree ≤ d from R(0..=d), as a primitive integer polynomial.
fn interpolate(d: usize, eval: impl Fn(&BigInt) -> BigInt) -> IntPoly {
    let xs: Vec<BigRational> = (0..=d as i64).map(|x| BigRational::from_integer(x.into())).collect();
    let ys: Vec<BigRational> = (0..=d as i64).map(|x| BigRational::from_integer(eval(&BigInt::from(x)))).collect();
    // Newton divided differences.
    let mut coef = ys.clone();
    for j in 1..=d {
        for i in (j..=d).rev() {
            coef[i] = (&coef[i] - &coef[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let mut poly = QPoly::constant(coef[d].clone());
    for i in (0..d).rev() {
        poly = &(&poly * &(&QPoly::x() - &QPoly::constant(xs[i].clone()))) + &QPoly::constant(coef[i].clone());
    }
    IntPoly::from_qpoly(&poly)
}

/// Π (x − ρ_i^k) up to a constant, for k ≥ 1.
pub fn power_resultant(f: &IntPoly, k: u32) -> IntPoly {
    let n = f.degree().unwrap();
    interpolate(n, |x| {
        let mut c = vec![BigInt::zero(); k as usize + 1];
        c[0] = x.clone();
        c[k as usize] = BigInt::from(-1);
        resultant(f, &IntPoly::new(c))
    })
}

/// Π (x − ρ_i σ_j) up to a constant; g must not vanish at 0.
pub fn product_resultant(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    interpolate(n * m, |x| {
        // y^m g(x/y) = Σ g_i x^i y^{m−i}
        let mut c = vec![BigInt::zero(); m + 1];
        let mut xp = BigInt::one();
        for (i, gi) in g.coeffs().iter().enumerate() {
            c[m - i] = gi * &xp;
            xp *= x;
        }
        resultant(f, &IntPoly::new(c))
    })
}

/// Π (x − ρ_i − σ_j) up to a constant.
pub fn sum_resultant(f: &IntPoly, g: &IntPoly) -> IntPoly {
    let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
    interpolate(n * m, |x| {
        // g(x − y) expanded in y.
        let base = IntPoly::new(vec![x.clone(), BigInt::from(-1)]);
        let mut acc = IntPoly::zero();
        let mut pw = IntPoly::one();
        for gi in g.coeffs() {
            acc = acc.add(&pw.scale(gi));
            pw = pw.mul(&base);
        }
        resultant(f, &acc)
    })
}

/// The irreducible factor of `r` with a root closest to `target`.
pub fn factor_near(r: &IntPoly, target: Complex64) -> IntPoly {
    let mut best: Option<(f64, IntPoly)> = None;
    for (g, _) in factor(r) {
        let dist = find_roots(&g.to_f64s())
            .disks
            .iter()
            .map(|d| (d.center - target).norm())
            .fold(f64::INFINITY, f64::min);
        if best.as_ref().map_or(true, |(b, _)| dist < *b) {
            best = Some((dist, g));
        }
    }
    best.expect("resultant has a factor").1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinant_small() {
        let m = |v: &[&[i64]]| v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_det(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(bareiss_det(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])), BigInt::from(0));
        assert_eq!(bareiss_det(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
    }

    #[test]
    fn sqrt2_plus_sqrt3() {
        let f = IntPoly::from_i64s(&[-2, 0, 1]);
        let g = IntPoly::from_i64s(&[-3, 0, 1]);
        let r = sum_resultant(&f, &g);
        assert_eq!(r, IntPoly::from_i64s(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn cube_of_cbrt2() {
        let f = IntPoly::from_i64s(&[-2, 0, 0, 1]);
        let r = power_resultant(&f, 3);
        // (x − 2)^3
        assert_eq!(r, IntPoly::from_i64s(&[-8, 12, -6, 1]));
    }
}
