//! Reduction mod p, point counts over 𝔽_{p^f}, and the supersingular prime scan.

use rayon::prelude::*;
use serde::Serialize;

use super::{CurveError, WeierstrassCurve};
use crate::exact::{fp_poly, is_prime, reduce_mod_p, FiniteField, FqElement, MAX_FIELD_SIZE};

/// A curve reduced over 𝔽_{p^f}.
#[derive(Clone, Debug, Serialize)]
pub struct ReducedCurve {
    pub p: u64,
    pub f: usize,
    #[serde(skip)]
    pub a_invariants: Vec<FqElement>,
    /// Reduced j-invariant as an element of 𝔽_p.
    pub j_reduced: u64,
    pub point_count: Option<u64>,
    /// |E(𝔽_q)| − q − 1, the negative of the usual trace of Frobenius.
    pub a_q: Option<i64>,
}

impl ReducedCurve {
    pub fn is_supersingular(&self) -> Option<bool> {
        self.a_q.map(|a| a.rem_euclid(self.p as i64) == 0)
    }
}

/// Reduces a curve with good reduction at p over 𝔽_{p^f}, without counting.
pub fn reduce(curve: &WeierstrassCurve, p: u64, f: usize) -> Result<ReducedCurve, CurveError> {
    if !is_prime(p) {
        return Err(CurveError::BadInput(format!("{p} is not prime")));
    }
    if p < 5 {
        return Err(CurveError::SmallPrime(p));
    }
    if !curve.is_p_integral(p) {
        return Err(CurveError::NotIntegral(p));
    }
    if !curve.has_good_reduction(p) {
        return Err(CurveError::BadReduction(p));
    }
    let field = FiniteField::new(p, f)?;
    let a_invariants = curve
        .a_invariants()
        .iter()
        .map(|a| field.from_int(reduce_mod_p(a, p).expect("p-integral") as i64))
        .collect();
    let j_reduced = reduce_mod_p(&curve.j_invariant, p).expect("good reduction keeps j integral");
    Ok(ReducedCurve { p, f, a_invariants, j_reduced, point_count: None, a_q: None })
}

/// Exact |E(𝔽_{p^f})| by summing quadratic characters of 4x³ + b2x² + 2b4x + b6.
pub fn count_points(curve: &WeierstrassCurve, p: u64, f: usize) -> Result<ReducedCurve, CurveError> {
    let mut red = reduce(curve, p, f)?;
    let q = p
        .checked_pow(f as u32)
        .filter(|&q| q <= MAX_FIELD_SIZE)
        .ok_or_else(|| CurveError::DeskBound(format!("{p}^{f} exceeds {MAX_FIELD_SIZE}")))?;
    let b = [&curve.b2, &curve.b4, &curve.b6].map(|c| reduce_mod_p(c, p).expect("p-integral"));
    let count = if f == 1 { count_prime_field(p, b) } else { count_extension(p, f, b)? };
    let a_q = count as i64 - q as i64 - 1;
    // Hasse: a_q² ≤ 4q. A violation means the count is wrong.
    if (a_q as i128) * (a_q as i128) > 4 * q as i128 {
        return Err(CurveError::Internal(format!("Hasse bound violated: a_q = {a_q}, q = {q}")));
    }
    red.point_count = Some(count);
    red.a_q = Some(a_q);
    Ok(red)
}

fn count_prime_field(p: u64, [b2, b4, b6]: [u64; 3]) -> u64 {
    let mut square = vec![false; p as usize];
    for x in 0..p {
        square[fp_poly::mulmod(x, x, p) as usize] = true;
    }
    let mut count = 1; // the point at infinity
    for x in 0..p {
        let x2 = fp_poly::mulmod(x, x, p);
        let x3 = fp_poly::mulmod(x2, x, p);
        let g = (fp_poly::mulmod(4, x3, p)
            + fp_poly::mulmod(b2, x2, p)
            + fp_poly::mulmod(fp_poly::mulmod(2, b4, p), x, p)
            + b6)
            % p;
        count += match g {
            0 => 1,
            _ if square[g as usize] => 2,
            _ => 0,
        };
    }
    count
}

fn count_extension(p: u64, f: usize, [b2, b4, b6]: [u64; 3]) -> Result<u64, CurveError> {
    let field = FiniteField::new(p, f)?;
    let index = |e: &FqElement| e.coords().iter().rev().fold(0u64, |acc, &c| acc * p + c);
    let mut square = vec![false; field.size() as usize];
    for x in field.elements() {
        square[index(&(&x * &x)) as usize] = true;
    }
    let (c2, c4, c6) = (field.from_int(b2 as i64), field.from_int(2 * b4 as i64), field.from_int(b6 as i64));
    let four = field.from_int(4);
    let mut count = 1;
    for x in field.elements() {
        let g = &(&(&(&four * &x) + &c2) * &x) + &c4;
        let g = &(&g * &x) + &c6;
        count += if g.is_zero() {
            1
        } else if square[index(&g) as usize] {
            2
        } else {
            0
        };
    }
    Ok(count)
}

pub fn is_supersingular(curve: &WeierstrassCurve, p: u64, f: usize) -> Result<bool, CurveError> {
    Ok(count_points(curve, p, f)?.is_supersingular().expect("counted"))
}

/// Prime-selection conditions for a base field of degree d and local degree f.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ScanCriteria {
    pub d: u32,
    pub f: u32,
}

impl ScanCriteria {
    pub fn over_q() -> ScanCriteria {
        ScanCriteria { d: 1, f: 1 }
    }

    /// Primes must be at least 2^{d+2}.
    pub fn prime_floor(&self) -> u64 {
        1u64 << (self.d + 2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum RejectReason {
    SmallPrime,
    NotIntegral,
    BadReduction,
    BelowFloor,
    JInvariantZero,
    JInvariant1728,
    NotSupersingular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Accepted,
    Rejected(Vec<RejectReason>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanEntry {
    pub p: u64,
    pub a_p: Option<i64>,
    pub verdict: Verdict,
}

/// Status of the Galois-surjectivity condition, which is never checked.
pub const SURJECTIVITY_STATUS: &str =
    "ASSUMED: surjectivity of the p-adic Galois representation is not verified (it holds for all but finitely many primes of a non-CM curve)";

/// Labels every prime in [lo, hi]; all failing conditions are listed.
pub fn supersingular_scan(curve: &WeierstrassCurve, lo: u64, hi: u64, criteria: ScanCriteria) -> Vec<ScanEntry> {
    let primes = crate::exact::primes_in_range(lo, hi);
    primes.par_iter().map(|&p| scan_prime(curve, p, criteria)).collect()
}

fn scan_prime(curve: &WeierstrassCurve, p: u64, criteria: ScanCriteria) -> ScanEntry {
    let mut reasons = Vec::new();
    if p < criteria.prime_floor() {
        reasons.push(RejectReason::BelowFloor);
    }
    let a_p = match count_points(curve, p, 1) {
        Ok(red) => {
            if red.j_reduced == 0 {
                reasons.push(RejectReason::JInvariantZero);
            }
            if red.j_reduced == 1728 % p {
                reasons.push(RejectReason::JInvariant1728);
            }
            if red.is_supersingular() != Some(true) {
                reasons.push(RejectReason::NotSupersingular);
            }
            red.a_q
        }
        Err(CurveError::SmallPrime(_)) => {
            reasons.push(RejectReason::SmallPrime);
            None
        }
        Err(CurveError::NotIntegral(_)) => {
            reasons.push(RejectReason::NotIntegral);
            None
        }
        Err(_) => {
            reasons.push(RejectReason::BadReduction);
            None
        }
    };
    let verdict = if reasons.is_empty() { Verdict::Accepted } else { Verdict::Rejected(reasons) };
    ScanEntry { p, a_p, verdict }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    fn x3_plus_x() -> WeierstrassCurve {
        WeierstrassCurve::short(rat_int(1), rat_int(0)).unwrap()
    }

    /// Brute force over all (x, y) pairs in 𝔽_p.
    fn brute_count(c: &WeierstrassCurve, p: u64) -> u64 {
        let a: Vec<i64> = c.a_invariants().iter().map(|x| reduce_mod_p(x, p).unwrap() as i64).collect();
        let p = p as i64;
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let lhs = y * y + a[0] * x * y + a[2] * y;
                let rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
                if (lhs - rhs).rem_euclid(p) == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn counts() {
        assert_eq!(count_points(&x3_plus_x(), 7, 1).unwrap().point_count, Some(8));
        assert_eq!(count_points(&x3_plus_x(), 5, 1).unwrap().point_count, Some(4));
        assert_eq!(count_points(&x3_plus_x(), 5, 1).unwrap().a_q, Some(-2));
        assert!(matches!(count_points(&x3_plus_x(), 3, 1), Err(CurveError::SmallPrime(3))));
        let e37 = WeierstrassCurve::from_ints([0, 0, 1, -1, 0]).unwrap();
        assert!(matches!(count_points(&e37, 37, 1), Err(CurveError::BadReduction(37))));
        for p in [5, 7, 11, 13, 17, 19, 23, 29, 31] {
            assert_eq!(count_points(&e37, p, 1).unwrap().point_count, Some(brute_count(&e37, p)));
        }
    }

    #[test]
    fn extension_counts_follow_frobenius() {
        // |E(𝔽_{p²})| = p² + 1 − (t² − 2p) with t the trace over 𝔽_p.
        let e37 = WeierstrassCurve::from_ints([0, 0, 1, -1, 0]).unwrap();
        for p in [5u64, 7, 11] {
            let t = -count_points(&e37, p, 1).unwrap().a_q.unwrap();
            let n2 = count_points(&e37, p, 2).unwrap().point_count.unwrap() as i64;
            assert_eq!(n2, (p * p + 1) as i64 - (t * t - 2 * p as i64));
        }
    }

    #[test]
    fn supersingularity() {
        assert!(is_supersingular(&x3_plus_x(), 7, 1).unwrap());
        assert!(!is_supersingular(&x3_plus_x(), 5, 1).unwrap());
        let e = WeierstrassCurve::short(rat_int(0), rat_int(1)).unwrap();
        assert!(is_supersingular(&e, 5, 1).unwrap());
    }

    #[test]
    fn a_p_vanishes_for_three_mod_four() {
        for p in crate::exact::primes_in_range(5, 200).into_iter().filter(|p| p % 4 == 3) {
            assert_eq!(count_points(&x3_plus_x(), p, 1).unwrap().a_q, Some(0), "p = {p}");
        }
    }

    #[test]
    fn scans() {
        for entry in supersingular_scan(&x3_plus_x(), 5, 60, ScanCriteria::over_q()) {
            match entry.verdict {
                Verdict::Rejected(r) => assert!(r.contains(&RejectReason::JInvariant1728)),
                Verdict::Accepted => panic!("accepted a j = 1728 prime"),
            }
        }
        let e37 = WeierstrassCurve::from_ints([0, 0, 1, -1, 0]).unwrap();
        let full = supersingular_scan(&e37, 5, 100, ScanCriteria::over_q());
        let accepted: Vec<u64> =
            full.iter().filter(|e| e.verdict == Verdict::Accepted).map(|e| e.p).collect();
        assert!(!accepted.is_empty());
        let sub = supersingular_scan(&e37, 17, 60, ScanCriteria::over_q());
        for e in &sub {
            assert_eq!(Some(e), full.iter().find(|f| f.p == e.p));
        }
        let at7 = supersingular_scan(&x3_plus_x(), 7, 7, ScanCriteria::over_q());
        assert!(matches!(&at7[0].verdict, Verdict::Rejected(r) if r.contains(&RejectReason::BelowFloor)));
        assert!(supersingular_scan(&e37, 30, 29, ScanCriteria::over_q()).is_empty());
    }
}
