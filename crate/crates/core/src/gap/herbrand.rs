//! Hasse–Herbrand φ and ψ from a lower-numbering filtration.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::GapError;

/// φ(u) = ∫₀ᵘ dt / [G₀ : G_t], exact over ℚ.
///
/// `segments[j] = (end_j, |G_t|)` for t in (end_{j−1}, end_j], end_{−1} = 0;
/// G_t is trivial past the last end. φ(u) = u on [−1, 0].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HerbrandFunction {
    pub group_order: BigInt,
    pub segments: Vec<(BigRational, BigInt)>,
}

impl HerbrandFunction {
    pub fn from_filtration(group_order: BigInt, segments: Vec<(BigRational, BigInt)>) -> Result<Self, GapError> {
        if !group_order.is_positive() {
            return Err(GapError::BadInput("group order must be positive".into()));
        }
        let mut prev_end = BigRational::zero();
        let mut prev_order = group_order.clone();
        for (end, order) in &segments {
            if *end <= prev_end {
                return Err(GapError::BadInput("segment ends must increase".into()));
            }
            if !order.is_positive() || !(&prev_order % order).is_zero() {
                return Err(GapError::BadInput("subgroup orders must divide their predecessors".into()));
            }
            prev_end = end.clone();
            prev_order = order.clone();
        }
        Ok(HerbrandFunction { group_order, segments })
    }

    /// (start, end, slope) pieces on [0, ∞); the last has end = None.
    fn pieces(&self) -> Vec<(BigRational, Option<BigRational>, BigRational)> {
        let g0 = BigRational::from_integer(self.group_order.clone());
        let mut out = Vec::new();
        let mut start = BigRational::zero();
        for (end, order) in &self.segments {
            out.push((start.clone(), Some(end.clone()), BigRational::from_integer(order.clone()) / &g0));
            start = end.clone();
        }
        out.push((start, None, BigRational::one() / g0));
        out
    }

    pub fn phi(&self, u: &BigRational) -> BigRational {
        if !u.is_positive() {
            return u.clone();
        }
        let mut acc = BigRational::zero();
        for (start, end, slope) in self.pieces() {
            let top = match &end {
                Some(e) if e < u => e.clone(),
                _ => u.clone(),
            };
            acc += (&top - &start) * &slope;
            if end.map_or(true, |e| &e >= u) {
                break;
            }
        }
        acc
    }

    pub fn psi(&self, v: &BigRational) -> BigRational {
        if !v.is_positive() {
            return v.clone();
        }
        let mut acc_u = BigRational::zero();
        let mut acc_v = BigRational::zero();
        for (start, end, slope) in self.pieces() {
            let rise = end.as_ref().map(|e| (e - &start) * &slope);
            match rise {
                Some(r) if &acc_v + &r < *v => {
                    acc_v += r;
                    acc_u = end.unwrap();
                }
                _ => return acc_u + (v - acc_v) / slope,
            }
        }
        unreachable!("the last piece is unbounded")
    }

    /// (u, φ(u)) at 0 and at every segment end.
    pub fn breakpoints(&self) -> Vec<(BigRational, BigRational)> {
        let mut out = vec![(BigRational::zero(), BigRational::zero())];
        for (end, _) in &self.segments {
            out.push((end.clone(), self.phi(end)));
        }
        out
    }
}
