//! Multiplication-by-m series and the supersingular index.

use serde::Serialize;

use crate::curve::WeierstrassCurve;
use crate::series::{CoeffRing, PrimeField, Series1};

use super::law::{build_w_series, CurveCoeffs, FormalGroupData};
use super::FormalError;

/// [m](T) together with its first unit coefficient index, when known.
#[derive(Clone, Debug)]
pub struct MulSeries<R: CoeffRing> {
    pub m: i64,
    pub series: Series1<R>,
    pub supersingular_index: Option<usize>,
}

/// A point of the formal group in (z, w) coordinates, as series in T.
#[derive(Clone, Debug)]
struct Pt<R: CoeffRing> {
    z: Series1<R>,
    w: Series1<R>,
}

/// c·s, or `None` when c is zero so the caller can skip the term.
fn term<R: CoeffRing>(r: &R, c: &R::Elem, s: impl FnOnce() -> Series1<R>) -> Option<Series1<R>> {
    (!r.is_zero(c)).then(|| s().scale(c))
}

fn sum<R: CoeffRing>(base: Series1<R>, terms: impl IntoIterator<Item = Option<Series1<R>>>) -> Series1<R> {
    terms.into_iter().flatten().fold(base, |a, b| &a + &b)
}

struct Ladder<'a, R: CoeffRing> {
    c: &'a CurveCoeffs<R>,
    order: usize,
}

impl<'a, R: CoeffRing> Ladder<'a, R> {
    fn ring(&self) -> &R {
        &self.c.ring
    }

    fn int(&self, n: i64) -> R::Elem {
        self.ring().from_i64(n)
    }

    /// Third point on the line w = λz + ν through p and q, then negated.
    fn chord(&self, p: &Pt<R>, q: &Pt<R>, lambda: Series1<R>) -> Result<Pt<R>, FormalError> {
        let c = self.c;
        let r = self.ring();
        let nu = &p.w - &(&lambda * &p.z);
        let l2 = &lambda * &lambda;
        let l3 = || &l2 * &lambda;
        let a = sum(
            Series1::one(r, lambda.order()),
            [term(r, &c.a2, || lambda.clone()), term(r, &c.a4, || l2.clone()), term(r, &c.a6, l3)],
        );
        let b = sum(
            Series1::zero(r, lambda.order()),
            [
                term(r, &c.a1, || lambda.clone()),
                term(r, &c.a2, || nu.clone()),
                term(r, &c.a3, || l2.clone()),
                term(r, &r.mul(&self.int(2), &c.a4), || &lambda * &nu),
                term(r, &r.mul(&self.int(3), &c.a6), || &l2 * &nu),
            ],
        );
        let z3 = &(&p.z + &q.z).neg() - &b.try_div(&a)?;
        let w3 = &(&lambda * &z3) + &nu;
        Ok(self.negate(&Pt { z: z3, w: w3 }))
    }

    /// (z, w) ↦ (z, w)/(a1·z + a3·w − 1).
    fn negate(&self, p: &Pt<R>) -> Pt<R> {
        let c = self.c;
        let r = self.ring();
        if r.is_zero(&c.a1) && r.is_zero(&c.a3) {
            return Pt { z: p.z.neg(), w: p.w.neg() };
        }
        let den = sum(
            Series1::one(r, p.z.order()).neg(),
            [term(r, &c.a1, || p.z.clone()), term(r, &c.a3, || p.w.clone())],
        );
        let inv = den.inverse().expect("constant term −1 is a unit");
        Pt { z: &p.z * &inv, w: &p.w * &inv }
    }

    fn double(&self, p: &Pt<R>) -> Result<Pt<R>, FormalError> {
        let c = self.c;
        let r = self.ring();
        let (z, w) = (&p.z, &p.w);
        let zz = z * z;
        let zw = z * w;
        let ww = || w * w;
        // Implicit derivative of w = f(z, w): dw/dz = f_z / (1 − f_w).
        let fz = sum(
            zz.scale(&self.int(3)),
            [
                term(r, &c.a1, || w.clone()),
                term(r, &r.mul(&self.int(2), &c.a2), || zw.clone()),
                term(r, &c.a4, ww),
            ],
        );
        let fw = sum(
            Series1::zero(r, z.order()),
            [
                term(r, &c.a1, || z.clone()),
                term(r, &c.a2, || zz.clone()),
                term(r, &r.mul(&self.int(2), &c.a3), || w.clone()),
                term(r, &r.mul(&self.int(2), &c.a4), || zw.clone()),
                term(r, &r.mul(&self.int(3), &c.a6), ww),
            ],
        );
        let lambda = fz.try_div(&(&Series1::one(r, z.order()) - &fw))?;
        self.chord(p, p, lambda)
    }

    /// p + q where z_q − z_p = T·(unit); the division by T costs one order.
    fn add(&self, p: &Pt<R>, q: &Pt<R>) -> Result<Pt<R>, FormalError> {
        let dz = (&q.z - &p.z).shift_down(1)?;
        let dw = (&q.w - &p.w).shift_down(1)?;
        let lambda = dw.try_div(&dz)?;
        let p1 = Pt { z: p.z.truncate(lambda.order()), w: p.w.truncate(lambda.order()) };
        let q1 = Pt { z: q.z.truncate(lambda.order()), w: q.w.truncate(lambda.order()) };
        self.chord(&p1, &q1, lambda)
    }

    /// [m] for m ≥ 1, keeping ([k], [k+1]) so every addition has Δz = T + ….
    fn multiply(&self, m: u64) -> Result<Series1<R>, FormalError> {
        let r = self.ring();
        let w = build_w_series(self.c, self.order);
        let one = Pt { z: Series1::var(r, self.order), w };
        let bits = 64 - m.leading_zeros();
        let mut r0 = one.clone();
        let mut r1 = self.double(&one)?;
        for i in (0..bits - 1).rev() {
            if (m >> i) & 1 == 1 {
                r0 = self.add(&r0, &r1)?;
                r1 = self.double(&r1)?;
            } else {
                r1 = self.add(&r0, &r1)?;
                r0 = self.double(&r0)?;
            }
            let o = r0.z.order().min(r1.z.order());
            r0 = Pt { z: r0.z.truncate(o), w: r0.w.truncate(o) };
            r1 = Pt { z: r1.z.truncate(o), w: r1.w.truncate(o) };
        }
        Ok(r0.z)
    }
}

/// [m](T) mod T^order over any coefficient ring the curve maps into.
pub fn multiplication_series<R: CoeffRing>(
    ring: &R,
    curve: &WeierstrassCurve,
    m: i64,
    order: usize,
) -> Result<Series1<R>, FormalError> {
    let c = CurveCoeffs::new(ring, curve)?;
    multiplication_series_with(&c, m, order)
}

pub(crate) fn multiplication_series_with<R: CoeffRing>(
    c: &CurveCoeffs<R>,
    m: i64,
    order: usize,
) -> Result<Series1<R>, FormalError> {
    let r = &c.ring;
    if m == 0 {
        return Ok(Series1::zero(r, order));
    }
    let bits = (64 - m.unsigned_abs().leading_zeros()) as usize;
    let work = order + 2 * bits + 2;
    let ladder = Ladder { c, order: work };
    let pos = if m.unsigned_abs() == 1 {
        Series1::var(r, work)
    } else {
        ladder.multiply(m.unsigned_abs())?
    };
    let out = if m < 0 {
        let w = pos_w(c, &pos)?;
        ladder.negate(&Pt { z: pos.clone(), w }).z
    } else {
        pos
    };
    if out.order() < order {
        return Err(FormalError::Internal(format!("ladder lost precision: {} < {order}", out.order())));
    }
    Ok(out.truncate(order))
}

/// w evaluated along a series: w(s(T)).
fn pos_w<R: CoeffRing>(c: &CurveCoeffs<R>, s: &Series1<R>) -> Result<Series1<R>, FormalError> {
    let w = build_w_series(c, s.order());
    Ok(w.compose(s)?)
}

/// [m] for a precomputed formal group, at the group's truncation order.
pub fn mul_by_m<R: CoeffRing>(fg: &FormalGroupData<R>, m: i64) -> Result<MulSeries<R>, FormalError> {
    let series = multiplication_series_with(&fg.coeffs, m, fg.order)?;
    Ok(MulSeries { m, series, supersingular_index: None })
}

/// Height data read off [p](T) mod p.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SupersingularIndex {
    pub p: u64,
    /// min{i ≥ 2 : coefficient i of [p](T) is a unit}.
    pub index: usize,
    /// The exponent h with index = p^h, when the index is a power of p.
    pub height: Option<u32>,
}

/// First unit coefficient of [p](T) at index ≥ 2, computed in 𝔽_p[[T]].
///
/// Needs order > p² to certify height 2; a shorter truncation with no unit
/// coefficient is reported as indeterminate.
pub fn supersingular_index(curve: &WeierstrassCurve, p: u64, order: usize) -> Result<SupersingularIndex, FormalError> {
    if !crate::exact::is_prime(p) {
        return Err(FormalError::BadInput(format!("{p} is not prime")));
    }
    if !curve.has_good_reduction(p) {
        return Err(FormalError::BadReduction(p));
    }
    let field = PrimeField::new(p);
    let series = multiplication_series(&field, curve, p as i64, order)?;
    let ms = MulSeries { m: p as i64, series, supersingular_index: None };
    first_unit_index(&ms, p)
}

/// The same search on an already computed [p](T) mod p.
pub fn first_unit_index(mulp: &MulSeries<PrimeField>, p: u64) -> Result<SupersingularIndex, FormalError> {
    let index = mulp
        .series
        .terms()
        .find(|(i, c)| *i >= 2 && **c != 0)
        .map(|(i, _)| i)
        .ok_or(FormalError::Indeterminate { order: mulp.series.order() })?;
    let mut height = None;
    let (mut q, mut h) = (1usize, 0u32);
    while q < index {
        q = q.saturating_mul(p as usize);
        h += 1;
    }
    if q == index {
        height = Some(h);
    }
    Ok(SupersingularIndex { p, index, height })
}
