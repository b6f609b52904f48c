//! Cross-module checks: each test feeds one module's output into another.

use heightgap_core::canonical::{canonical_height_doubling, canonical_height_local_sum, naive_height, DEFAULT_DOUBLINGS};
use heightgap_core::curve::{division_polynomials, supersingular_scan, ScanCriteria, Verdict, WeierstrassCurve};
use heightgap_core::exact::rat;
use heightgap_core::formal::{eisenstein_tower, supersingular_index, torsion_valuations, TowerConfig};
use heightgap_core::gap::{cross_check, thm01_constants, tower_prediction, GapParams};
use heightgap_core::height::{weil_height, AlgebraicNumber};

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

#[test]
fn scanned_primes_have_height_two_formal_groups() {
    let c = curve([0, 0, 1, -1, 0]);
    let accepted: Vec<u64> = supersingular_scan(&c, 5, 30, ScanCriteria::over_q())
        .into_iter()
        .filter(|e| e.verdict == Verdict::Accepted)
        .map(|e| e.p)
        .collect();
    assert_eq!(accepted, [17, 19]);
    for p in accepted {
        let si = supersingular_index(&c, p, (p * p + 1) as usize).unwrap();
        assert_eq!((si.index as u64, si.height), (p * p, Some(2)));
    }
}

#[test]
fn level_one_tower_matches_prediction() {
    let c = curve([0, 0, 0, 0, 1]);
    let pf = eisenstein_tower(&c, 5, 1, &TowerConfig::default()).unwrap();
    let pred = tower_prediction(1, 5).unwrap();
    assert_eq!(heightgap_core::exact::BigInt::from(pf.top().g_degree), pred.degree);
    let count: usize = torsion_valuations(&pf).unwrap().iter().map(|t| t.multiplicity).sum();
    assert_eq!(count + 1, 25);
    assert!(cross_check(&pf).unwrap().iter().all(|c| c.agrees));
}

#[test]
fn division_polynomial_multiples_scale_canonical_height() {
    let c = curve([0, 0, 0, 0, 17]);
    let p = c.point(rat(-2, 1), rat(3, 1)).unwrap();
    let h = canonical_height_doubling(&c, &p, DEFAULT_DOUBLINGS).unwrap().value;
    for m in [3u32, 5, 7] {
        let dp = division_polynomials(&c, m).unwrap();
        let mp = dp.multiple(&p);
        assert_eq!(mp, c.mul(&p, m as i64));
        let hm = canonical_height_local_sum(&c, &mp).unwrap().value;
        assert!((hm - (m * m) as f64 * h).abs() < 1e-9 * (m * m) as f64, "m = {m}");
    }
}

#[test]
fn naive_height_is_half_the_weil_height_of_x() {
    let c = curve([0, 0, 0, 0, 17]);
    let p = c.point(rat(-2, 1), rat(3, 1)).unwrap();
    for m in 1..=4 {
        let mp = c.mul(&p, m);
        let x = mp.x().unwrap();
        let w = weil_height(&AlgebraicNumber::rational(x)).unwrap().value;
        assert!((naive_height(&mp).value - w / 2.0).abs() < 1e-12, "m = {m}");
    }
}

#[test]
fn gap_derivation_replays() {
    let r = thm01_constants(&GapParams::new(2, 1, 11).unwrap(), 0.2).unwrap();
    assert!(r.derivation.replay().is_empty());
    assert!(r.final_C > 0.0 && r.final_C <= 1.0);
}

#[test]
fn canonical_height_ignores_a_non_minimal_model() {
    // (x, y) ↦ (4x, 8y) takes y² = x³ + 17 to y² = x³ + 17·2⁶.
    let small = curve([0, 0, 0, 0, 17]);
    let big = curve([0, 0, 0, 0, 17 * 64]);
    let p = small.point(rat(-2, 1), rat(3, 1)).unwrap();
    let q = big.point(rat(-8, 1), rat(24, 1)).unwrap();
    let h = canonical_height_doubling(&small, &p, DEFAULT_DOUBLINGS).unwrap().value;
    for v in [
        canonical_height_doubling(&big, &q, DEFAULT_DOUBLINGS).unwrap().value,
        canonical_height_local_sum(&big, &q).unwrap().value,
    ] {
        assert!((v - h).abs() < 1e-12);
    }
}
