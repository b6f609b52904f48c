use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::curve::WeierstrassCurve;
use crate::exact::rat;
use crate::formal::{eisenstein_tower, TowerConfig};

fn params(d: u32, f: u32, p: u64) -> GapParams {
    GapParams::new(d, f, p).unwrap()
}

#[test]
fn unramified_gap_examples() {
    let v = unramified_gap(&params(1, 1, 5)).unwrap();
    assert!((v - 2.5f64.ln() / 26.0).abs() < 1e-16);
    assert!((v - 0.0352).abs() < 1e-4);
    assert!(matches!(unramified_gap(&params(1, 1, 2)), Err(GapError::Vacuous { .. })));
    assert!(matches!(unramified_gap(&params(3, 1, 7)), Err(GapError::Vacuous { .. })));
}

#[test]
fn unramified_gap_shrinks_as_f_grows() {
    for (d, p) in [(1, 5), (2, 7), (3, 11), (1, 13)] {
        let vals: Vec<f64> = (1..=4).map(|f| unramified_gap(&params(d, f, p)).unwrap()).collect();
        // The numerator grows linearly in f, the denominator like p^{2f}: the
        // bound shrinks. Record the direction the formula actually takes.
        assert!(vals.windows(2).all(|w| w[1] < w[0]), "{d} {p}: {vals:?}");
    }
}

#[test]
fn q_of_n() {
    assert_eq!(Q_of_n(1, 25).unwrap(), 600);
    assert_eq!(Q_of_n(2, 25).unwrap(), 25);
    assert_eq!(Q_of_n(7, 25).unwrap(), 25);
    assert!(Q_of_n(0, 25).is_err());
}

#[test]
fn thm01_at_p5() {
    let r = thm01_constants(&params(1, 1, 5), DEFAULT_UNIVERSAL_C).unwrap();
    assert_eq!(r.C1, 6250.0);
    let ram = 5f64.ln() / (2.0 * 5f64.powi(8));
    let unr = 2.5f64.ln() / (25.0 * 24.0 * 26.0);
    assert!((r.c2_ramified - ram).abs() < 1e-20);
    assert!((r.c2_unramified - unr).abs() < 1e-18);
    assert_eq!(r.c2, ram.min(unr));
    assert_eq!(r.c2_attained_by, C2Branch::Ramified);
    assert!((r.C2 - r.c2 / 5.0).abs() < 1e-22);
    let chain = (r.C2).powi(4) / (1.0 + 1024.0 * 6250f64.powf(0.25)).powi(4);
    let want = 1f64.min(DEFAULT_UNIVERSAL_C / 6250.0).min(chain);
    assert!(((r.final_C - want) / want).abs() < 1e-14);
    assert!(r.final_C > 0.0 && r.final_C <= 1.0);
    assert!(r.warnings.iter().any(|w| w.contains("2^(d+2)")), "5 < 8 is flagged");
}

#[test]
fn derivations_replay_exactly() {
    for p in [5, 7, 11, 13] {
        let r = thm01_constants(&params(1, 1, p), DEFAULT_UNIVERSAL_C).unwrap();
        assert!(r.derivation.replay().is_empty());
        let e = thm02_constants(&params(2, 1, p), 1).unwrap();
        assert!(e.derivation.replay().is_empty());
    }
    let mut dv = thm01_constants(&params(1, 1, 7), 0.2).unwrap().derivation;
    dv.steps[3].value *= 1.0 + 1e-15;
    assert_eq!(dv.replay().first(), Some(&dv.steps[3].name));
}

#[test]
fn final_constant_decreases_in_p() {
    let c: Vec<f64> = [5, 7, 11, 13]
        .iter()
        .map(|&p| thm01_constants(&params(1, 1, p), DEFAULT_UNIVERSAL_C).unwrap().final_C)
        .collect();
    assert!(c.iter().all(|&x| x > 0.0 && x.is_finite()));
    assert!(c.windows(2).all(|w| w[1] < w[0]), "{c:?}");
}

#[test]
fn final_algebra_step() {
    let grid: Vec<f64> = (0..=4000).map(|i| 10f64.powf(-120.0 + 0.03 * i as f64)).filter(|&h| h <= 1.0).collect();
    for p in [5, 7, 11] {
        let r = thm01_constants(&params(1, 1, p), 0.2).unwrap();
        assert!(frey_chain_implication(r.C1, r.C2, &grid).is_empty());
        let recorded = r.derivation.get("chain_bound").unwrap();
        assert!((final_step_bound(r.C1, r.C2) / recorded - 1.0).abs() < 1e-14);
    }
}

#[test]
fn frey_examples() {
    assert!((frey_rhs(1.0, 0.25).unwrap() - 1024.0).abs() < 1e-12);
    assert_eq!(frey_rhs(0.0, 0.3).unwrap(), 0.0);
    for h in [0.5, 2.0, 17.0] {
        assert!((frey_rhs(h, 0.25).unwrap() - 1024.0 * f64::powf(h, 0.25)).abs() < 1e-10 * h.max(1.0));
    }
    assert!(frey_rhs(1.0, 0.0).is_err() && frey_rhs(1.0, 0.5).is_err() && frey_rhs(-1.0, 0.25).is_err());
}

#[test]
fn thm02_at_p5() {
    let e = thm02_constants(&params(1, 1, 5), 1).unwrap();
    assert_eq!(e.amplification, 374_400_000.0);
    assert_eq!(40 * 625 * 26 * 576, 374_400_000);
    assert!((e.local_gap - 5f64.ln() / 31250.0).abs() < 1e-20);
    assert_eq!(e.global_gap, e.local_gap);
    assert!(e.epsilon > 0.0);
    assert!(thm02_constants(&params(1, 1, 5), 2).is_err());
}

#[test]
fn orbit_floor() {
    assert_eq!(galois_orbit_floor(5).unwrap().factor, rat(1, 625));
    assert_eq!(galois_orbit_floor(7).unwrap().factor, rat(1, 2401));
    let f: Vec<BigRational> = [5, 7, 11, 13].iter().map(|&p| galois_orbit_floor(p).unwrap().factor).collect();
    assert!(f.windows(2).all(|w| w[1] < w[0]));
    assert!(galois_orbit_floor(3).is_err());
}

#[test]
fn tower_prediction_examples() {
    let t1 = tower_prediction(1, 5).unwrap();
    assert_eq!(t1.degree, BigInt::from(24));
    assert_eq!(t1.group_shape, "Z/24");
    assert_eq!(t1.ramification_breaks.len(), 1);
    let t2 = tower_prediction(2, 5).unwrap();
    assert_eq!(t2.degree, BigInt::from(600));
    assert_eq!(t2.group_shape, "Z/24 x (Z/5)^2");
    let b: Vec<(i64, i64, u32)> = t2
        .ramification_breaks
        .iter()
        .map(|b| (b.lower.clone().try_into().unwrap(), b.upper.clone().try_into().unwrap(), b.level))
        .collect();
    assert_eq!(b, vec![(1, 24, 1), (25, 624, 2)]);
    for n in 1..=5 {
        let t = tower_prediction(n, 7).unwrap();
        assert_eq!(t.filtration_jump_product(), t.degree);
    }
    assert!(tower_prediction(0, 5).is_err() && tower_prediction(2, 3).is_err());
}

#[test]
fn herbrand_identity_segment_over_level_k() {
    let t = tower_prediction(3, 5).unwrap();
    for k in 1..=3u32 {
        let phi = t.herbrand_over_level(k).unwrap();
        let top = 25i64.pow(k) - 1;
        for u in [0, 1, top / 3, top] {
            assert_eq!(phi.phi(&rat(u, 1)), rat(u, 1));
        }
        if k < 3 {
            assert!(phi.phi(&rat(top + 1, 1)) < rat(top + 1, 1));
        }
    }
}

#[test]
fn herbrand_over_base() {
    // φ(u) = u/24 on [0, 24]; slope 1/600 past 624 at level 2.
    let t = tower_prediction(2, 5).unwrap();
    assert_eq!(t.herbrand.phi(&rat(24, 1)), rat(1, 1));
    assert_eq!(t.herbrand.phi(&rat(624, 1)), rat(1, 1) + rat(600, 600));
    assert_eq!(t.herbrand.phi(&rat(1224, 1)), rat(3, 1));
    assert_eq!(t.herbrand.phi(&rat(-1, 2)), rat(-1, 2));
}

proptest! {
    #[test]
    fn phi_psi_inverse(n in 1u32..4, pi in 0usize..3, num in -50i64..100_000, den in 1i64..50) {
        let p = [5u64, 7, 11][pi];
        let t = tower_prediction(n, p).unwrap();
        let u = rat(num, den);
        prop_assert_eq!(t.herbrand.psi(&t.herbrand.phi(&u)), u.clone());
        prop_assert_eq!(t.herbrand.phi(&t.herbrand.psi(&u)), u.clone());
        let u2 = &u + rat(1, 7);
        prop_assert!(t.herbrand.phi(&u2) > t.herbrand.phi(&u));
    }
}

#[test]
fn prediction_matches_computed_tower() {
    // y² = x³ + 1 is supersingular at 5.
    let c = WeierstrassCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
    let pf = eisenstein_tower(&c, 5, 2, &TowerConfig::default()).unwrap();
    let checks = cross_check(&pf).unwrap();
    assert_eq!(checks.len(), 2);
    assert!(checks.iter().all(|c| c.agrees), "{checks:?}");
}
