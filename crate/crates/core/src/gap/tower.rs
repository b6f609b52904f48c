//! Predicted degrees, group shape and ramification breaks of the p^n-torsion
//! tower of a height-two formal group over ℚ_w.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::formal::PreparedFactorization;

use super::{GapError, HerbrandFunction};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationBreak {
    /// G_i = Gal(L_n | L_level) for lower ≤ i ≤ upper.
    pub lower: BigInt,
    pub upper: BigInt,
    pub level: u32,
    pub subgroup_order: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerPrediction {
    pub n: u32,
    pub p: u64,
    pub q: BigInt,
    /// q^{n−1}(q − 1).
    pub degree: BigInt,
    pub group_shape: String,
    pub ramification_breaks: Vec<RamificationBreak>,
    /// φ of L_n over the base.
    pub herbrand: HerbrandFunction,
}

pub fn tower_prediction(n: u32, p: u64) -> Result<TowerPrediction, GapError> {
    if n == 0 {
        return Err(GapError::BadInput("level n must be at least 1".into()));
    }
    if p < 5 || !crate::exact::is_prime(p) {
        return Err(GapError::SmallPrime(p));
    }
    let q = BigInt::from(p).pow(2);
    let qm1: BigInt = &q - 1;
    let degree: BigInt = q.pow(n - 1) * &qm1;
    let group_shape = if n == 1 {
        format!("Z/{qm1}")
    } else {
        let pn = BigInt::from(p).pow(n - 1);
        format!("Z/{qm1} x (Z/{pn})^2")
    };
    let ramification_breaks: Vec<RamificationBreak> = (1..=n)
        .map(|k| RamificationBreak {
            lower: q.pow(k - 1),
            upper: q.pow(k) - 1,
            level: k,
            subgroup_order: q.pow(n - k),
        })
        .collect();
    let herbrand = HerbrandFunction::from_filtration(
        degree.clone(),
        ramification_breaks
            .iter()
            .map(|b| (BigRational::from_integer(b.upper.clone()), b.subgroup_order.clone()))
            .collect(),
    )?;
    Ok(TowerPrediction { n, p, q, degree, group_shape, ramification_breaks, herbrand })
}

impl TowerPrediction {
    /// |G₀/G₁| times the jumps |G_{q^{k−1}}/G_{q^k}|; equals the degree.
    pub fn filtration_jump_product(&self) -> BigInt {
        let mut prod = BigInt::one();
        let mut prev = self.degree.clone();
        for b in &self.ramification_breaks {
            prod *= &prev / &b.subgroup_order;
            prev = b.subgroup_order.clone();
        }
        prod * prev
    }

    /// φ of L_n over the intermediate field L_k: the identity up to q^k − 1.
    pub fn herbrand_over_level(&self, k: u32) -> Result<HerbrandFunction, GapError> {
        if k == 0 || k > self.n {
            return Err(GapError::BadInput(format!("level {k} outside 1..={}", self.n)));
        }
        let order = self.q.pow(self.n - k);
        let mut segments = vec![(BigRational::from_integer(self.q.pow(k) - 1), order.clone())];
        for b in self.ramification_breaks.iter().filter(|b| b.level > k) {
            segments.push((BigRational::from_integer(b.upper.clone()), b.subgroup_order.clone()));
        }
        HerbrandFunction::from_filtration(order, segments)
    }
}

/// Predicted degrees and breaks against the Newton-polygon data of a
/// computed tower.
#[derive(Clone, Debug, Serialize)]
pub struct TowerCrossCheck {
    pub level: u32,
    pub predicted_degree: BigInt,
    pub computed_degree: usize,
    pub computed_slope: Option<BigRational>,
    /// deg g_n = q^{n−1}(q − 1) and g_n has the single slope 1/deg g_n.
    pub degree_agrees: bool,
    /// 1 + Σ_{k≤n} deg g_k = q^n = deg F_n.
    pub torsion_count_agrees: bool,
    /// For k < n the break q^k equals deg g_n · v(root of g_{n−k}): the
    /// normalised valuation of σπ_n − π_n for σ fixing exactly L_k.
    pub breaks_agree: bool,
    pub agrees: bool,
}

fn single_root_valuation(level: &crate::formal::TowerLevel) -> Option<BigRational> {
    match level.g_polygon.segments.as_slice() {
        [s] => Some(s.root_valuation()),
        _ => None,
    }
}

pub fn cross_check(pf: &PreparedFactorization) -> Result<Vec<TowerCrossCheck>, GapError> {
    let mut out = Vec::new();
    let mut degree_sum = BigInt::one();
    for (idx, lvl) in pf.levels.iter().enumerate() {
        let pred = tower_prediction(lvl.n, pf.p)?;
        let slope = single_root_valuation(lvl);
        let want_slope = BigRational::new(BigInt::one(), pred.degree.clone());
        let degree_agrees = BigInt::from(lvl.g_degree) == pred.degree && slope.as_ref() == Some(&want_slope);
        degree_sum += lvl.g_degree;
        let torsion_count_agrees = degree_sum == pred.q.pow(lvl.n) && pf.levels[..=idx].len() == lvl.n as usize;
        let n_deg = BigRational::from_integer(BigInt::from(lvl.g_degree));
        let breaks_agree = (1..lvl.n).all(|k| {
            let lower = &pf.levels[(lvl.n - k - 1) as usize];
            let brk = &pred.ramification_breaks[k as usize];
            single_root_valuation(lower).map(|v| &n_deg * v) == Some(BigRational::from_integer(brk.lower.clone()))
        });
        out.push(TowerCrossCheck {
            level: lvl.n,
            predicted_degree: pred.degree,
            computed_degree: lvl.g_degree,
            computed_slope: slope,
            degree_agrees,
            torsion_count_agrees,
            breaks_agree,
            agrees: degree_agrees && torsion_count_agrees && breaks_agree,
        });
    }
    Ok(out)
}
