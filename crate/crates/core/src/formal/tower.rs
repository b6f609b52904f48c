//! The tower F_1 | F_2 | … of distinguished factors of [p^n], and the
//! torsion valuations read from its Newton polygons.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve::WeierstrassCurve;
use crate::padic::{NewtonPolygon, ZpMod};
use crate::series::Series1;

use super::law::CurveCoeffs;
use super::mult::multiplication_series_with;
use super::prepare::{poly, weierstrass_prepare};
use super::FormalError;

/// Largest distinguished degree p^{2n} the tower will attempt.
pub const MAX_TOWER_DEGREE: u64 = 1000;

#[derive(Clone, Debug, Serialize)]
pub struct TowerConfig {
    /// Working precision N of ℤ/p^N.
    pub precision: u32,
    /// Valuation N' the remainder of F_n mod F_{n−1} must reach.
    pub remainder_floor: u32,
    /// Guard degree D as a multiple of the top distinguished degree.
    pub guard_factor: usize,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig { precision: 64, remainder_floor: 40, guard_factor: 3 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerLevel {
    pub n: u32,
    /// Distinguished degree of [p^n].
    pub s: usize,
    /// F_n, lowest degree first.
    #[serde(skip)]
    pub f_n: Vec<BigInt>,
    /// v with v·[p^n] ≡ F_n mod T^{D+1−s}.
    #[serde(skip)]
    pub unit_head: Series1<ZpMod>,
    /// g_n = F_n / F_{n−1}.
    #[serde(skip)]
    pub g: Vec<BigInt>,
    pub g_degree: usize,
    pub predicted_degree: usize,
    /// v_p of the remainder of F_n by F_{n−1}; `None` means zero mod p^N.
    pub remainder_valuation: Option<u32>,
    pub eisenstein: bool,
    pub g_polygon: NewtonPolygon,
    pub iterations: usize,
}

/// Tower data up to level n_max.
#[derive(Clone, Debug, Serialize)]
pub struct PreparedFactorization {
    pub p: u64,
    pub q: u64,
    pub guard_degree: usize,
    pub config: TowerConfig,
    pub levels: Vec<TowerLevel>,
    /// Polygon of F_{n_max}.
    pub polygon: NewtonPolygon,
}

impl PreparedFactorization {
    pub fn top(&self) -> &TowerLevel {
        self.levels.last().expect("tower has at least one level")
    }
}

/// Monic g over ℤ/p^N is Eisenstein when every lower coefficient has
/// valuation ≥ 1 and the constant term has valuation exactly 1.
pub fn is_eisenstein(ring: &ZpMod, g: &[BigInt]) -> bool {
    let Some((lead, rest)) = g.split_last() else { return false };
    if !lead.is_one() || rest.is_empty() {
        return false;
    }
    ring.valuation(&rest[0]) == Some(1) && rest.iter().all(|c| !ring.is_unit(c))
}

/// q^{k−1}(q−1), the degree of g_k.
pub fn predicted_g_degree(q: u64, k: u32) -> u64 {
    q.pow(k - 1) * (q - 1)
}

/// Builds F_1..F_{n_max} for a curve with supersingular reduction at p.
///
/// Every level is prepared with the same guard D = guard_factor·p^{2·n_max}.
/// The cofactor is only known mod T^{D+1−s}, so a root of valuation v moves at
/// valuation about (D+1−s)·v; with factor 3 at p = 5, n = 2 the level-one roots
/// inside F_2 are good to roughly 50 digits, enough for the remainder check.
pub fn eisenstein_tower(
    curve: &WeierstrassCurve,
    p: u64,
    n_max: u32,
    config: &TowerConfig,
) -> Result<PreparedFactorization, FormalError> {
    if n_max == 0 {
        return Err(FormalError::BadInput("tower needs n_max ≥ 1".into()));
    }
    if !curve.has_good_reduction(p) {
        return Err(FormalError::BadReduction(p));
    }
    let q = p * p;
    let top = q.checked_pow(n_max).filter(|&t| t <= MAX_TOWER_DEGREE).ok_or(FormalError::DeskBound {
        degree: q.saturating_pow(n_max),
        limit: MAX_TOWER_DEGREE,
    })? as usize;
    let guard = config.guard_factor.max(2) * top;
    let ring = ZpMod::new(p, config.precision);
    let coeffs = CurveCoeffs::new(&ring, curve)?;

    let mut levels: Vec<TowerLevel> = Vec::new();
    let mut prev: Vec<BigInt> = vec![BigInt::zero(), BigInt::one()];
    for n in 1..=n_max {
        let m = (p as i64).pow(n);
        let series = multiplication_series_with(&coeffs, m, guard + 1)?;
        let prep = weierstrass_prepare(&series, guard)?;
        let expected = q.pow(n) as usize;
        if prep.s != expected {
            return Err(FormalError::Inconsistent(format!(
                "[{m}] has distinguished degree {} but height 2 predicts {expected}",
                prep.s
            )));
        }
        let (g, rem) = poly::divrem_monic(&ring, &prep.distinguished, &prev);
        let remainder_valuation = poly::min_valuation(&ring, &rem);
        if remainder_valuation.is_some_and(|v| v < config.remainder_floor) {
            return Err(FormalError::Inconsistent(format!(
                "F_{n} mod F_{} has valuation {} < {}",
                n - 1,
                remainder_valuation.unwrap(),
                config.remainder_floor
            )));
        }
        let g_polygon = NewtonPolygon::from_zp_coeffs(&ring, &g)?;
        levels.push(TowerLevel {
            n,
            s: prep.s,
            eisenstein: is_eisenstein(&ring, &g),
            g_degree: g.len() - 1,
            predicted_degree: predicted_g_degree(q, n) as usize,
            g,
            remainder_valuation,
            g_polygon,
            iterations: prep.iterations,
            unit_head: prep.unit_inverse,
            f_n: prep.distinguished.clone(),
        });
        prev = prep.distinguished;
    }
    let polygon = NewtonPolygon::from_zp_coeffs(&ring, &prev)?;
    Ok(PreparedFactorization { p, q, guard_degree: guard, config: config.clone(), levels, polygon })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionLevel {
    pub level: u32,
    /// Valuation of each point of exact order p^level.
    pub valuation: BigRational,
    pub multiplicity: usize,
}

/// Reads the torsion valuations off the polygon of F_{n_max} and checks them
/// against 1/(q^{k−1}(q−1)) with multiplicity q^{k−1}(q−1).
pub fn torsion_valuations(pf: &PreparedFactorization) -> Result<Vec<TorsionLevel>, FormalError> {
    let poly = &pf.polygon;
    if poly.zero_roots != 1 {
        return Err(FormalError::Inconsistent(format!("F_n has {} roots at zero", poly.zero_roots)));
    }
    let roots = poly.root_valuations();
    if roots.len() != pf.levels.len() {
        return Err(FormalError::Inconsistent(format!(
            "polygon has {} slopes for {} levels",
            roots.len(),
            pf.levels.len()
        )));
    }
    let mut out = Vec::new();
    for (k, (valuation, multiplicity)) in (1..).zip(roots) {
        let d = predicted_g_degree(pf.q, k);
        let want = BigRational::new(BigInt::one(), BigInt::from(d));
        if valuation != want || multiplicity as u64 != d {
            return Err(FormalError::Inconsistent(format!(
                "level {k}: slope {valuation} × {multiplicity}, predicted {want} × {d}"
            )));
        }
        out.push(TorsionLevel { level: k, valuation, multiplicity });
    }
    Ok(out)
}
