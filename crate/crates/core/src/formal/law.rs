//! The formal group of a Weierstrass curve: w(Z), x, y, i(T) and F(X, Y).

use crate::curve::WeierstrassCurve;
use crate::series::{CoeffRing, Series1, Series2, SeriesN};

use super::FormalError;

/// a1, a2, a3, a4, a6 mapped into a coefficient ring.
#[derive(Clone, Debug)]
pub struct CurveCoeffs<R: CoeffRing> {
    pub ring: R,
    pub a1: R::Elem,
    pub a2: R::Elem,
    pub a3: R::Elem,
    pub a4: R::Elem,
    pub a6: R::Elem,
}

impl<R: CoeffRing> CurveCoeffs<R> {
    /// Fails when some a_i has a denominator that is not a unit in the ring.
    pub fn new(ring: &R, curve: &WeierstrassCurve) -> Result<Self, FormalError> {
        let map = |x| ring.from_rational(x).ok_or(FormalError::NotIntegral);
        Ok(CurveCoeffs {
            ring: ring.clone(),
            a1: map(&curve.a1)?,
            a2: map(&curve.a2)?,
            a3: map(&curve.a3)?,
            a4: map(&curve.a4)?,
            a6: map(&curve.a6)?,
        })
    }
}

/// w(Z) with w = Z³ + a1·Z·w + a2·Z²·w + a3·w² + a4·Z·w² + a6·w³.
///
/// Coefficients are produced one at a time: the Z^n coefficient of the
/// right side only involves w_k for k < n, together with running w² and w³.
pub fn build_w_series<R: CoeffRing>(c: &CurveCoeffs<R>, order: usize) -> Series1<R> {
    let r = &c.ring;
    let mut w = vec![r.zero(); order];
    let mut w2 = vec![r.zero(); order];
    let mut w3 = vec![r.zero(); order];
    for n in 3..order {
        let mut acc = r.acc_new();
        for i in 3..=n.saturating_sub(3) {
            r.acc_mul_add(&mut acc, &w[i], &w[n - i]);
        }
        w2[n] = r.acc_finish(acc);
        let mut acc = r.acc_new();
        for i in 3..=n.saturating_sub(6) {
            r.acc_mul_add(&mut acc, &w[i], &w2[n - i]);
        }
        w3[n] = r.acc_finish(acc);
        let mut v = if n == 3 { r.one() } else { r.zero() };
        v = r.add(&v, &r.mul(&c.a1, &w[n - 1]));
        v = r.add(&v, &r.mul(&c.a2, &w[n - 2]));
        v = r.add(&v, &r.mul(&c.a3, &w2[n]));
        v = r.add(&v, &r.mul(&c.a4, &w2[n - 1]));
        v = r.add(&v, &r.mul(&c.a6, &w3[n]));
        w[n] = v;
    }
    Series1::from_dense(r, order, w)
}

/// Z^{−pole_order} · tail.
#[derive(Clone, Debug)]
pub struct Laurent<R: CoeffRing> {
    pub pole_order: usize,
    pub tail: Series1<R>,
}

/// The formal group law and its companions, truncated at total degree `order`.
#[derive(Clone, Debug)]
pub struct FormalGroupData<R: CoeffRing> {
    pub curve: WeierstrassCurve,
    pub coeffs: CurveCoeffs<R>,
    pub order: usize,
    pub w: Series1<R>,
    /// x = Z/w.
    pub x: Laurent<R>,
    /// y = −1/w.
    pub y: Laurent<R>,
    /// F(X, Y).
    pub law: Series2<R>,
    /// i(T), the inverse.
    pub neg: Series1<R>,
}

/// i(T) = T / (a1·T + a3·w(T) − 1).
pub fn negation_series<R: CoeffRing>(c: &CurveCoeffs<R>, w: &Series1<R>) -> Result<Series1<R>, FormalError> {
    let r = &c.ring;
    let order = w.order();
    let t = Series1::var(r, order);
    let den = &(&t.scale(&c.a1) + &w.scale(&c.a3)) - &Series1::one(r, order);
    Ok(t.try_div(&den)?)
}

/// F(X, Y) = i(z3), where z3 is the third intersection of the chord through
/// (X, w(X)) and (Y, w(Y)).
fn group_law<R: CoeffRing>(c: &CurveCoeffs<R>, w: &Series1<R>, order: usize) -> Result<Series2<R>, FormalError> {
    let r = &c.ring;
    // λ = Σ w_n (X^n − Y^n)/(X − Y); needs w_n for n ≤ order.
    let mut lambda: Series2<R> = SeriesN::zero(r, order);
    for (n, wn) in w.terms() {
        if n > order {
            break;
        }
        for j in 0..n {
            let e = [j, n - 1 - j];
            let v = r.add(&lambda.coeff(e), wn);
            lambda.set(e, v);
        }
    }
    let x: Series2<R> = SeriesN::var(r, order, 0);
    let y: Series2<R> = SeriesN::var(r, order, 1);
    let wx = SeriesN::embed(w, 0, order);
    let nu = &wx - &(&lambda * &x);
    let one = SeriesN::constant(r, order, r.one());
    let l2 = &lambda * &lambda;
    let l3 = &l2 * &lambda;
    let a = &(&(&one + &lambda.scale(&c.a2)) + &l2.scale(&c.a4)) + &l3.scale(&c.a6);
    let lnu = &lambda * &nu;
    let l2nu = &l2 * &nu;
    let b = &(&(&(&lambda.scale(&c.a1) + &nu.scale(&c.a2)) + &l2.scale(&c.a3))
        + &lnu.scale(&r.mul(&r.from_i64(2), &c.a4)))
        + &l2nu.scale(&r.mul(&r.from_i64(3), &c.a6));
    let z3 = &(&x + &y).neg() - &b.try_div(&a)?;
    let w3 = &(&lambda * &z3) + &nu;
    let den = &(&z3.scale(&c.a1) + &w3.scale(&c.a3)) - &one;
    Ok(z3.try_div(&den)?)
}

pub fn build_group_law<R: CoeffRing>(
    ring: &R,
    curve: &WeierstrassCurve,
    order: usize,
) -> Result<FormalGroupData<R>, FormalError> {
    if order < 3 {
        return Err(FormalError::BadInput("group law needs order ≥ 3".into()));
    }
    let coeffs = CurveCoeffs::new(ring, curve)?;
    // One extra w coefficient feeds the top-degree slope terms.
    let w_long = build_w_series(&coeffs, order + 1);
    let law = group_law(&coeffs, &w_long, order)?;
    let w = w_long.truncate(order);
    let neg = negation_series(&coeffs, &w)?;
    // w = Z³·u with u a unit, so x = Z^{−2}·u^{−1} and y = −Z^{−3}·u^{−1}.
    let u = w.shift_down(3)?;
    let u_inv = u.inverse()?;
    let x = Laurent { pole_order: 2, tail: u_inv.clone() };
    let y = Laurent { pole_order: 3, tail: u_inv.neg() };
    Ok(FormalGroupData { curve: curve.clone(), coeffs, order, w, x, y, law, neg })
}
