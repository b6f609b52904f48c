//! Division polynomials of y² = x³ + Ax + B for odd m.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use super::{CurveError, CurvePoint, WeierstrassCurve};
use crate::exact::{rat_int, QPoly};

/// Largest m accepted.
pub const MAX_DIVISION_M: u32 = 31;

/// [m](x, y) = (φ_m/ψ_m², y·ω̃_m/ψ_m³) with ω̃_m = ω_m / y.
#[derive(Clone, Debug)]
pub struct DivisionPolynomials {
    pub m: u32,
    pub phi: QPoly,
    pub psi: QPoly,
    pub omega_over_y: QPoly,
}

impl DivisionPolynomials {
    /// x([m]P); `None` when P is m-torsion.
    pub fn x_of_multiple(&self, x: &BigRational) -> Option<BigRational> {
        let psi = self.psi.eval(x);
        (!psi.is_zero()).then(|| self.phi.eval(x) / (&psi * &psi))
    }

    /// [m]P from the rational functions.
    pub fn multiple(&self, p: &CurvePoint) -> CurvePoint {
        match p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => {
                let psi = self.psi.eval(x);
                if psi.is_zero() {
                    return CurvePoint::Infinity;
                }
                let psi2 = &psi * &psi;
                CurvePoint::Affine {
                    x: self.phi.eval(x) / &psi2,
                    y: y * self.omega_over_y.eval(x) / (psi2 * psi),
                }
            }
        }
    }
}

/// ψ_n for odd n, and ψ_n / y for even n, as polynomials in x.
struct Psi {
    r: QPoly,
    memo: HashMap<u32, QPoly>,
}

impl Psi {
    fn new(a: &BigRational, b: &BigRational) -> Psi {
        let r = QPoly::new(vec![b.clone(), a.clone(), BigRational::zero(), rat_int(1)]);
        let mut memo = HashMap::new();
        memo.insert(0, QPoly::zero());
        memo.insert(1, QPoly::from_ints(&[1]));
        memo.insert(2, QPoly::from_ints(&[2]));
        let a2 = a * a;
        memo.insert(
            3,
            QPoly::new(vec![-a2.clone(), rat_int(12) * b, rat_int(6) * a, BigRational::zero(), rat_int(3)]),
        );
        let inner = QPoly::new(vec![
            rat_int(-8) * b * b - &a2 * a,
            rat_int(-4) * a * b,
            rat_int(-5) * &a2,
            rat_int(20) * b,
            rat_int(5) * a,
            BigRational::zero(),
            rat_int(1),
        ]);
        memo.insert(4, inner.scale(&rat_int(4)));
        Psi { r, memo }
    }

    fn get(&mut self, n: u32) -> QPoly {
        if let Some(p) = self.memo.get(&n) {
            return p.clone();
        }
        let m = n / 2;
        let e = if n % 2 == 1 {
            let (a, b, c, d) = (self.get(m + 2), self.get(m), self.get(m - 1), self.get(m + 1));
            let r2 = self.r.pow(2);
            let t1 = &a * &b.pow(3);
            let t2 = &c * &d.pow(3);
            if m % 2 == 0 {
                &(&r2 * &t1) - &t2
            } else {
                &t1 - &(&r2 * &t2)
            }
        } else {
            let (em, a, b, c, d) = (self.get(m), self.get(m + 2), self.get(m - 1), self.get(m - 2), self.get(m + 1));
            let bracket = &(&a * &b.pow(2)) - &(&c * &d.pow(2));
            (&em * &bracket).scale(&BigRational::new(1.into(), 2.into()))
        };
        self.memo.insert(n, e.clone());
        e
    }
}

pub fn division_polynomials(curve: &WeierstrassCurve, m: u32) -> Result<DivisionPolynomials, CurveError> {
    if m % 2 == 0 {
        return Err(CurveError::BadInput(format!("m = {m} must be odd")));
    }
    if m > MAX_DIVISION_M {
        return Err(CurveError::DeskBound(format!("m = {m} exceeds {MAX_DIVISION_M}")));
    }
    if !curve.is_short() {
        return Err(CurveError::BadInput("division polynomials need y² = x³ + Ax + B".into()));
    }
    let mut psi = Psi::new(&curve.a4, &curve.a6);
    let e_m = psi.get(m);
    let (e_prev, e_next) = (psi.get(m - 1), psi.get(m + 1));
    let phi = &(&QPoly::x() * &e_m.pow(2)) - &(&psi.r * &(&e_next * &e_prev));
    let omega_over_y = if m == 1 {
        QPoly::from_ints(&[1])
    } else {
        let (a, c) = (psi.get(m + 2), psi.get(m - 2));
        (&(&a * &e_prev.pow(2)) - &(&c * &e_next.pow(2))).scale(&BigRational::new(1.into(), 4.into()))
    };
    let out = DivisionPolynomials { m, phi, psi: e_m, omega_over_y };
    let (dphi, dpsi) = (out.phi.degree(), out.psi.degree());
    if dphi != Some((m * m) as usize) || dpsi != Some(((m * m - 1) / 2) as usize) {
        return Err(CurveError::Internal(format!("degrees {dphi:?}, {dpsi:?} for m = {m}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let e = WeierstrassCurve::short(rat_int(2), rat_int(3)).unwrap();
        let d1 = division_polynomials(&e, 1).unwrap();
        assert_eq!(d1.phi, QPoly::x());
        assert_eq!(d1.psi, QPoly::from_ints(&[1]));
        let d3 = division_polynomials(&e, 3).unwrap();
        // 3x⁴ + 6Ax² + 12Bx − A² with A = 2, B = 3.
        assert_eq!(d3.psi, QPoly::from_ints(&[-4, 36, 12, 0, 3]));
        let d5 = division_polynomials(&e, 5).unwrap();
        assert_eq!(d5.phi.degree(), Some(25));
        assert_eq!(d5.psi.degree(), Some(12));
        assert!(division_polynomials(&e, 4).is_err());
        assert!(division_polynomials(&e, 33).is_err());
    }

    #[test]
    fn matches_group_law() {
        // y² = x³ − 2 has the non-torsion point (3, 5).
        let e = WeierstrassCurve::short(rat_int(0), rat_int(-2)).unwrap();
        let p = e.point(rat_int(3), rat_int(5)).unwrap();
        let e2 = WeierstrassCurve::short(rat_int(-2), rat_int(1)).unwrap();
        let q = e2.point(rat_int(1), rat_int(0)).unwrap();
        let r = e2.point(rat_int(0), rat_int(1)).unwrap();
        for (curve, pt) in [(&e, &p), (&e2, &r), (&e2, &q)] {
            for m in [1, 3, 5, 7] {
                let dp = division_polynomials(curve, m).unwrap();
                assert_eq!(dp.multiple(pt), curve.mul(pt, m as i64), "m = {m}, P = {pt}");
            }
        }
    }
}
