use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::exact::{rat, rat_int};
use crate::height::{weil_height, AlgebraicNumber};

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

fn pt(c: &WeierstrassCurve, x: i64, y: i64) -> CurvePoint {
    c.point(rat_int(x), rat_int(y)).unwrap()
}

const C37A: [i64; 5] = [0, 0, 1, -1, 0];
const C389A: [i64; 5] = [0, 1, 1, -2, 0];
const C5077A: [i64; 5] = [0, 0, 1, -7, 6];
const MORDELL_M2: [i64; 5] = [0, 0, 0, 0, -2];
const MORDELL_17: [i64; 5] = [0, 0, 0, 0, 17];

fn fixtures() -> Vec<(WeierstrassCurve, CurvePoint)> {
    let mut out = Vec::new();
    for (a, pts) in [
        (C37A, vec![(0, 0), (1, 0)]),
        (C389A, vec![(-1, 1), (0, 0)]),
        (C5077A, vec![(0, 2), (1, 0)]),
        (MORDELL_M2, vec![(3, 5)]),
        (MORDELL_17, vec![(-2, 3), (2, 5), (8, 23)]),
    ] {
        let c = curve(a);
        for (x, y) in pts {
            let p = pt(&c, x, y);
            out.push((c.clone(), p));
        }
    }
    out
}

fn h_doubling(c: &WeierstrassCurve, p: &CurvePoint) -> CanonicalHeightEstimate {
    canonical_height_doubling(c, p, DEFAULT_DOUBLINGS).unwrap()
}

fn h_local(c: &WeierstrassCurve, p: &CurvePoint) -> f64 {
    canonical_height_local_sum(c, p).unwrap().value
}

#[test]
fn naive_height_examples() {
    assert_eq!(naive_height(&CurvePoint::Infinity).value, 0.0);
    let at = |x: BigRational| CurvePoint::Affine { x, y: rat_int(0) };
    assert!((naive_height(&at(rat_int(2))).value - 2f64.ln() / 2.0).abs() < 1e-15);
    assert!((naive_height(&at(rat(3, 2))).value - 3f64.ln() / 2.0).abs() < 1e-15);
    for x in [rat(-7, 12), rat(1000, 3), rat(5, 1)] {
        let w = weil_height(&AlgebraicNumber::rational(&x)).unwrap().value;
        assert!((naive_height(&at(x)).value - w / 2.0).abs() < 1e-12);
    }
}

use num_rational::BigRational;

#[test]
fn telescoped_doubling_matches_exact_sequence() {
    for (c, p) in fixtures() {
        let exact = naive_doubling_sequence(&c, &p, 6);
        let est = canonical_height_doubling(&c, &p, 6).unwrap();
        for (k, (a, b)) in exact.iter().zip(&est.sequence).enumerate() {
            assert!((a - b).abs() < 1e-10 * a.abs().max(1.0), "{p:?} step {k}: {a} vs {b}");
        }
    }
}

#[test]
fn successive_estimates_within_tail_bound() {
    for (c, p) in fixtures() {
        let est = h_doubling(&c, &p);
        let s = &est.sequence;
        let last = s[s.len() - 1];
        assert!((s[s.len() - 2] - last).abs() <= 4.0 * est.tail_bound + 1e-15);
        assert!(est.tail_bound < 1e-12);
    }
}

#[test]
fn rank_one_conductor_37() {
    // Regulator of 37a in the h(x) normalisation is 0.0511114082399688.
    let c = curve(C37A);
    let p = pt(&c, 0, 0);
    let want = 0.0511114082399688 / 2.0;
    assert!((h_doubling(&c, &p).value - want).abs() < 1e-12);
    let ls = canonical_height_local_sum(&c, &p).unwrap();
    assert_eq!(ls.multiple, 2, "(0, 0) lies on the bounded real component");
    assert!((ls.value - want).abs() < 1e-9, "{}", ls.value);
}

#[test]
fn methods_agree_on_fixtures() {
    let fx = fixtures();
    assert_eq!(fx.len(), 10);
    for (c, p) in fx {
        let d = h_doubling(&c, &p).value;
        let l = h_local(&c, &p);
        assert!((d - l).abs() < TOLERANCES.method_agreement, "{p:?}: doubling {d}, local {l}");
        assert!(d > 0.0);
    }
}

#[test]
fn torsion_points_have_height_zero() {
    for (a, (x, y)) in [
        ([0, -1, 1, -10, -20], (5, 5)),
        ([0, -1, 1, 0, 0], (0, 0)),
        ([0, 0, 0, 0, 1], (2, 3)),
        ([0, 0, 0, 0, 1], (0, 1)),
        ([0, 0, 0, 0, 1], (-1, 0)),
    ] {
        let c = curve(a);
        let p = pt(&c, x, y);
        let est = h_doubling(&c, &p);
        assert!(est.value.abs() < TOLERANCES.torsion_zero.max(est.tail_bound), "{a:?}: {}", est.value);
        let ls = canonical_height_local_sum(&c, &p).unwrap();
        assert!(ls.torsion && ls.value == 0.0);
    }
    let c = curve(C37A);
    assert_eq!(h_doubling(&c, &CurvePoint::Infinity).value, 0.0);
}

#[test]
fn quadratic_scaling() {
    for (c, p) in fixtures() {
        let h = h_doubling(&c, &p).value;
        for m in [2i64, 3] {
            let mp = c.mul(&p, m);
            let m2 = (m * m) as f64;
            let hd = h_doubling(&c, &mp).value;
            let hl = h_local(&c, &mp);
            assert!((hd - m2 * h).abs() < m2 * TOLERANCES.quadratic_scaling, "{p:?} m={m}");
            assert!((hl - m2 * h).abs() < m2 * TOLERANCES.quadratic_scaling, "{p:?} m={m} local");
        }
    }
}

#[test]
fn parallelogram_law() {
    for (a, p, q) in [
        (C389A, (-1, 1), (0, 0)),
        (C5077A, (0, 2), (1, 0)),
        (C5077A, (0, 2), (2, 0)),
        (MORDELL_17, (-2, 3), (-1, 4)),
        (MORDELL_17, (2, 5), (4, 9)),
        (MORDELL_17, (43, 282), (52, 375)),
    ] {
        let c = curve(a);
        let (p, q) = (pt(&c, p.0, p.1), pt(&c, q.0, q.1));
        let h = |r: &CurvePoint| h_doubling(&c, r).value;
        let lhs = h(&c.add(&p, &q)) + h(&c.sub(&p, &q));
        let rhs = 2.0 * (h(&p) + h(&q));
        assert!((lhs - rhs).abs() < TOLERANCES.parallelogram, "{a:?}: {lhs} vs {rhs}");
        let l = |r: &CurvePoint| h_local(&c, r);
        let lhs = l(&c.add(&p, &q)) + l(&c.sub(&p, &q));
        let rhs = 2.0 * (l(&p) + l(&q));
        assert!((lhs - rhs).abs() < TOLERANCES.parallelogram, "{a:?} local: {lhs} vs {rhs}");
    }
}

#[test]
fn uniformization_checks() {
    for a in [C37A, C389A, C5077A, MORDELL_M2, MORDELL_17, [0, 0, 0, 1, 0], [0, -1, 1, -10, -20]] {
        let u = uniformize(&curve(a)).unwrap();
        assert!(u.q.norm() < 1.0);
        assert!(u.tau.im > 0.0 && u.tau.re.abs() <= 0.5 + 1e-12 && u.tau.norm() >= 1.0 - 1e-12);
        assert!(u.j_relative_error < TOLERANCES.j_agreement, "{a:?}: {}", u.j_relative_error);
    }
}

#[test]
fn b2_values() {
    assert_eq!(b2(0.0), 1.0 / 6.0);
    assert_eq!(b2(0.0), b2(1.0));
    assert!((b2(0.5) + 1.0 / 12.0).abs() < 1e-16);
    assert_eq!(b2_integral_exact(), rat(0, 1));
}

#[test]
fn two_torsion_direction_on_square_lattice() {
    let u = uniformize(&curve([0, 0, 0, 1, 0])).unwrap();
    let s = arch_series(Complex64::new(0.5, 0.0), u.tau, None).unwrap();
    assert!(s.value.is_finite());
    assert!(s.terms < 20, "{} terms", s.terms);
    // Direct summation to a fixed large number of terms agrees.
    let long = arch_series(Complex64::new(0.5, 0.0), u.tau, Some(60)).unwrap();
    assert!((s.value - long.value).abs() < 1e-15);
    // Independent value: λ(½) = −log|q|/12 − log 2 − 2Σ log(1 + qⁿ) on the
    // square lattice, q = e^{−2π}.
    let q = (-2.0 * std::f64::consts::PI).exp();
    let mut want = 2.0 * std::f64::consts::PI / 12.0 - 2f64.ln();
    for n in 1..40 {
        want -= 2.0 * (1.0 + q.powi(n)).ln();
    }
    assert!((s.value - want).abs() < 1e-14, "{} vs {want}", s.value);
}

#[test]
fn origin_is_a_pole() {
    let u = uniformize(&curve([0, 0, 0, 1, 0])).unwrap();
    assert!(matches!(local_height_arch(Complex64::new(0.0, 0.0), &u), Err(CanonicalError::AtOrigin)));
    assert!(matches!(local_height_arch(Complex64::new(1.0, 0.0) + u.tau, &u), Err(CanonicalError::AtOrigin)));
}

#[test]
fn tail_envelope_bounds_the_remainder() {
    for a in [C37A, [0, 0, 0, 1, 0], C5077A] {
        let u = uniformize(&curve(a)).unwrap();
        for w in [Complex64::new(0.3, 0.0), u.tau * 0.5 + 0.1, u.tau * 0.9 + 0.7, u.tau * 0.05] {
            let full = arch_series(w, u.tau, None).unwrap().value;
            for n in 0..6 {
                let part = arch_series(w, u.tau, Some(n)).unwrap();
                assert!((full - part.value).abs() <= part.tail_envelope * (1.0 + 1e-9) + 1e-15, "{a:?} n={n}");
            }
        }
    }
}

#[test]
fn good_reduction_local_heights() {
    let c = curve(MORDELL_17);
    let p = pt(&c, 2, 5);
    assert_eq!(local_height_good_reduction(&c, &p, 5).unwrap().value, 0.0);
    // Multiples of (0, 0) on 37a: x([5]P) = 1/4, x([7]P) = −5/9, x([10]P) = 161/16.
    let c37 = curve(C37A);
    let m = |k| c37.mul(&pt(&c37, 0, 0), k);
    assert_eq!(m(5).x().unwrap(), &rat(1, 4));
    assert_eq!(m(7).x().unwrap(), &rat(-5, 9));
    assert_eq!(m(10).x().unwrap(), &rat(161, 16));
    let lh = |k, p| local_height_good_reduction(&c37, &m(k), p).unwrap().value;
    assert!((lh(5, 2) - 2f64.ln()).abs() < 1e-15);
    assert!((lh(7, 3) - 3f64.ln()).abs() < 1e-15);
    assert!((lh(10, 2) - 2.0 * 2f64.ln()).abs() < 1e-15);
    assert_eq!(lh(10, 3), 0.0);
    assert!(matches!(local_height_good_reduction(&c37, &m(5), 37), Err(CanonicalError::BadReductionPlace(37))));
}

#[test]
fn multiplicative_formula() {
    let p = 7;
    let v = rat(3, 1);
    let half = local_height_mult_formula(p, &rat(1, 2), &v, &rat(0, 1)).unwrap();
    // −½·b₂(½)·log|q_v| = (1/24)·log|q_v| = −(1/24)·3·log 7.
    assert!((half.value.value + 3.0 * 7f64.ln() / 24.0).abs() < 1e-15);
    let near0 = local_height_mult_formula(p, &rat(1, 1_000_000_000), &v, &rat(0, 1)).unwrap();
    let one = local_height_mult_formula(p, &rat(1, 1), &v, &rat(0, 1)).unwrap();
    assert!((near0.value.value - one.value.value).abs() < 1e-8);
    assert!(local_height_mult_formula(p, &rat(0, 1), &v, &rat(0, 1)).is_err());
    assert!(local_height_mult_formula(p, &rat(3, 2), &v, &rat(0, 1)).is_err());
    assert!(local_height_mult_formula(p, &rat(1, 2), &rat(-1, 1), &rat(0, 1)).is_err());
}

proptest! {
    #[test]
    fn mult_formula_lower_bound(num in 1i64..=100, den_extra in 0i64..100, vq in 1i64..20, v1 in 0i64..5, p in prop::sample::select(vec![2u64, 3, 5, 7, 11])) {
        let r = rat(num, num + den_extra);
        let m = local_height_mult_formula(p, &r, &rat(vq, 1), &rat(v1, 1)).unwrap();
        prop_assert!(m.value.value >= m.lower_bound - 1e-15);
    }

    #[test]
    fn arch_height_is_even(x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let u = uniformize(&curve(C389A)).unwrap();
        let w = Complex64::new(x, 0.0) + u.tau * y;
        prop_assume!(w.norm() > 1e-3 && (w - 1.0).norm() > 1e-3 && (w - u.tau).norm() > 1e-3 && (w - 1.0 - u.tau).norm() > 1e-3);
        let a = local_height_arch(w, &u).unwrap().value;
        let b = local_height_arch(-w, &u).unwrap().value;
        prop_assert!((a - b).abs() < TOLERANCES.evenness * a.abs().max(1.0), "{} vs {}", a, b);
    }
}

#[test]
fn haar_integral_vanishes() {
    for a in [[0, 0, 0, 1, 0], C37A, MORDELL_17] {
        let u = uniformize(&curve(a)).unwrap();
        let reports: Vec<HaarReport> = [64, 128, 256].iter().map(|&n| haar_report(&u, n).unwrap()).collect();
        let values: Vec<f64> = reports.iter().map(|r| r.value.abs()).collect();
        assert!(values[0] > values[1] && values[1] > values[2], "{a:?}: {values:?}");
        let r = &reports[2];
        assert!(r.value.abs() < TOLERANCES.haar_total, "{a:?}: {}", r.value);
        let j1 = r.jensen_terms.iter().find(|t| t.n == 1).unwrap();
        assert!(j1.plus.abs() < TOLERANCES.jensen_term && j1.minus.unwrap().abs() < TOLERANCES.jensen_term);
        assert!(r.disk_mass.is_finite() && r.disk_mass > 0.0);
    }
}
