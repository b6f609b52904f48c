//! Newton polygons: lower convex hulls of (i, v(c_i)).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::{PadicError, ZpMod};

/// One edge of the hull, from degree `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub start: usize,
    pub end: usize,
    /// Hull slope (v(c_end) − v(c_start)) / (end − start).
    pub slope: BigRational,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.end - self.start
    }

    /// Valuation of the roots this edge accounts for.
    pub fn root_valuation(&self) -> BigRational {
        -self.slope.clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygon {
    /// Hull vertices, left to right.
    pub vertices: Vec<(usize, BigRational)>,
    /// Edges with strictly increasing slopes.
    pub segments: Vec<Segment>,
    /// Number of roots at zero: the lowest degree with a nonzero coefficient.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Builds the polygon from (degree, valuation) pairs; `None` marks a zero coefficient.
    pub fn from_valuations(points: &[(usize, Option<BigRational>)]) -> Result<NewtonPolygon, PadicError> {
        let mut pts: Vec<(usize, BigRational)> =
            points.iter().filter_map(|(i, v)| v.clone().map(|v| (*i, v))).collect();
        if pts.is_empty() {
            return Err(PadicError::BadInput("all coefficients are zero".into()));
        }
        pts.sort_by_key(|(i, _)| *i);
        pts.dedup_by_key(|(i, _)| *i);
        let zero_roots = pts[0].0;

        let mut hull: Vec<(usize, BigRational)> = Vec::new();
        for pt in pts {
            while hull.len() >= 2 {
                let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
                // Drop b when it lies on or above the chord from a to pt.
                let lhs = (&b.1 - &a.1) * BigRational::from_integer(BigInt::from(pt.0 - a.0));
                let rhs = (&pt.1 - &a.1) * BigRational::from_integer(BigInt::from(b.0 - a.0));
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let segments = hull
            .windows(2)
            .map(|w| Segment {
                start: w[0].0,
                end: w[1].0,
                slope: (&w[1].1 - &w[0].1) / BigRational::from_integer(BigInt::from(w[1].0 - w[0].0)),
            })
            .collect();
        Ok(NewtonPolygon { vertices: hull, segments, zero_roots })
    }

    /// Polygon of a polynomial with capped p-adic coefficients (lowest degree first).
    ///
    /// A coefficient that is zero to the working precision is treated as absent;
    /// this is sound whenever the true hull lies below the precision cap.
    pub fn from_zp_coeffs(ring: &ZpMod, coeffs: &[BigInt]) -> Result<NewtonPolygon, PadicError> {
        let pts: Vec<(usize, Option<BigRational>)> = coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (i, ring.valuation(c).map(|v| BigRational::from_integer(v.into()))))
            .collect();
        NewtonPolygon::from_valuations(&pts)
    }

    /// (root valuation, multiplicity) per edge, largest valuation first.
    pub fn root_valuations(&self) -> Vec<(BigRational, usize)> {
        self.segments.iter().map(|s| (s.root_valuation(), s.length())).collect()
    }

    /// Multiset of edges as (slope, length) with equal slopes merged.
    pub fn slope_multiset(&self) -> Vec<(BigRational, usize)> {
        let mut out: Vec<(BigRational, usize)> = Vec::new();
        for s in &self.segments {
            match out.last_mut() {
                Some((slope, len)) if *slope == s.slope => *len += s.length(),
                _ => out.push((s.slope.clone(), s.length())),
            }
        }
        out
    }

    pub fn degree_span(&self) -> usize {
        self.segments.iter().map(Segment::length).sum()
    }

    pub fn is_flat(&self) -> bool {
        self.segments.iter().all(|s| s.slope.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn pts(v: &[(usize, i64)]) -> Vec<(usize, Option<BigRational>)> {
        v.iter().map(|&(i, x)| (i, Some(rat(x, 1)))).collect()
    }

    #[test]
    fn eisenstein_quadratic() {
        let np = NewtonPolygon::from_valuations(&pts(&[(0, 1), (1, 1), (2, 0)])).unwrap();
        assert_eq!(np.root_valuations(), vec![(rat(1, 2), 2)]);
        assert_eq!(np.zero_roots, 0);
    }

    #[test]
    fn zero_root_split_out() {
        // X·(X² + pX + p)
        let mut v = vec![(0, None)];
        v.extend(pts(&[(1, 1), (2, 1), (3, 0)]));
        let np = NewtonPolygon::from_valuations(&v).unwrap();
        assert_eq!(np.zero_roots, 1);
        assert_eq!(np.root_valuations(), vec![(rat(1, 2), 2)]);
    }

    #[test]
    fn eisenstein_degree_24() {
        let mut v = pts(&[(0, 1), (24, 0)]);
        v.extend((1..24).map(|i| (i, Some(rat(1, 1)))));
        let np = NewtonPolygon::from_valuations(&v).unwrap();
        assert_eq!(np.root_valuations(), vec![(rat(1, 24), 24)]);
    }

    #[test]
    fn all_zero_rejected() {
        assert!(NewtonPolygon::from_valuations(&[(0, None), (1, None)]).is_err());
    }
}
