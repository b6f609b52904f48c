use proptest::prelude::*;

use super::*;
use crate::curve::{is_supersingular, WeierstrassCurve};
use crate::exact::rat;
use crate::padic::ZpMod;
use crate::series::{series_compose2, CoeffRing, Rationals, Series1, Series2, Series3, SeriesN};

fn q() -> Rationals {
    Rationals
}

fn curve(a: [i64; 5]) -> WeierstrassCurve {
    WeierstrassCurve::from_ints(a).unwrap()
}

/// w by iterating w ← f(Z, w) from Z³ until nothing changes.
fn w_fixed_point(c: &WeierstrassCurve, order: usize) -> Series1<Rationals> {
    let r = q();
    let z = Series1::var(&r, order);
    let k = |x: &num_rational::BigRational| Series1::monomial(&r, order, x.clone(), 0);
    let z3 = z.pow(3);
    let mut w = z3.clone();
    loop {
        let w2 = &w * &w;
        let f = &(&(&(&(&z3 + &(&(&k(&c.a1) * &z) * &w)) + &(&(&k(&c.a2) * &z.pow(2)) * &w)) + &(&k(&c.a3) * &w2))
            + &(&(&k(&c.a4) * &z) * &w2))
            + &(&k(&c.a6) * &(&w2 * &w));
        if f == w {
            return w;
        }
        w = f;
    }
}

#[test]
fn w_short_example() {
    let c = WeierstrassCurve::short(rat(2, 1), rat(3, 1)).unwrap();
    let coeffs = CurveCoeffs::new(&q(), &c).unwrap();
    let w = build_w_series(&coeffs, 12);
    let expected = Series1::from_terms(&q(), 12, [(3, rat(1, 1)), (7, rat(2, 1)), (9, rat(3, 1)), (11, rat(8, 1))]);
    assert_eq!(w, expected);
    assert_eq!(w, w_fixed_point(&c, 12));
}

#[test]
fn w_matches_fixed_point_general_curve() {
    for a in [[1, -1, 1, -10, -20], [0, 0, 1, -1, 0], [1, 2, 3, 4, 5]] {
        let c = curve(a);
        let coeffs = CurveCoeffs::new(&q(), &c).unwrap();
        let w = build_w_series(&coeffs, 16);
        assert_eq!(w, w_fixed_point(&c, 16), "curve {a:?}");
        assert!(w.terms().all(|(_, x)| x.is_integer()));
    }
}

#[test]
fn laurent_x_y() {
    let c = curve([1, -1, 1, -10, -20]);
    let fg = build_group_law(&q(), &c, 12).unwrap();
    assert_eq!(fg.x.tail.order(), 9);
    let z3 = Series1::monomial(&q(), 9, rat(1, 1), 3);
    assert_eq!(&fg.x.tail * &fg.w, z3);
    assert_eq!(&fg.y.tail * &fg.w, z3.neg());
}

fn x_y(order: usize) -> (Series2<Rationals>, Series2<Rationals>) {
    (SeriesN::var(&q(), order, 0), SeriesN::var(&q(), order, 1))
}

#[test]
fn group_law_axioms() {
    for a in [[0, 0, 0, 2, 3], [1, -1, 1, -10, -20], [0, 0, 1, -1, 0], [1, 2, 3, 4, 5]] {
        let order = 8;
        let fg = build_group_law(&q(), &curve(a), order).unwrap();
        let f = &fg.law;
        let (x, y) = x_y(order);
        // F ≡ X + Y mod degree 2.
        assert_eq!(f.truncate(2), (&x + &y).truncate(2));
        // F(X, 0) = X and F(0, Y) = Y.
        let zero = SeriesN::zero(&q(), order);
        assert_eq!(f.substitute(&[x.clone(), zero.clone()]).unwrap(), x);
        assert_eq!(f.substitute(&[zero, y.clone()]).unwrap(), y);
        // Commutativity.
        assert_eq!(f.substitute(&[y.clone(), x.clone()]).unwrap(), *f);
        // Associativity in three variables.
        let v = |i| -> Series3<Rationals> { SeriesN::var(&q(), order, i) };
        let fxy = f.substitute(&[v(0), v(1)]).unwrap();
        let fyz = f.substitute(&[v(1), v(2)]).unwrap();
        let left = f.substitute(&[v(0), fyz]).unwrap();
        let right = f.substitute(&[fxy, v(2)]).unwrap();
        assert_eq!(left, right, "curve {a:?}");
        // Inverse.
        let t = Series1::var(&q(), order);
        assert!(series_compose2(f, &t, &fg.neg).unwrap().is_zero());
    }
}

#[test]
fn multiplication_matches_chain() {
    let c = curve([1, -1, 1, -10, -20]);
    let order = 10;
    let fg = build_group_law(&q(), &c, order).unwrap();
    let t = Series1::var(&q(), order);
    assert!(mul_by_m(&fg, 0).unwrap().series.is_zero());
    assert_eq!(mul_by_m(&fg, 1).unwrap().series, t);
    assert_eq!(mul_by_m(&fg, -1).unwrap().series, fg.neg);
    let mut chain = t.clone();
    for m in 2..=8 {
        chain = series_compose2(&fg.law, &chain, &t).unwrap();
        let ms = mul_by_m(&fg, m).unwrap();
        assert_eq!(ms.series, chain, "[{m}]");
        assert_eq!(ms.series.coeff(1), rat(m, 1));
    }
}

#[test]
fn multiplication_is_a_homomorphism() {
    let c = curve([0, 0, 1, -1, 0]);
    let order = 7;
    let fg = build_group_law(&q(), &c, order).unwrap();
    let (x, y) = x_y(order);
    for m in [2, 3, -2] {
        let mm = mul_by_m(&fg, m).unwrap().series;
        let lhs = mm.compose_multi(&fg.law).unwrap();
        let mx = SeriesN::embed(&mm, 0, order).substitute(&[x.clone(), y.clone()]).unwrap();
        let my = SeriesN::embed(&mm, 1, order).substitute(&[x.clone(), y.clone()]).unwrap();
        let rhs = fg.law.substitute(&[mx, my]).unwrap();
        assert_eq!(lhs, rhs, "[{m}]");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]
    #[test]
    fn composition_of_multiplications(m in -5i64..=5, k in -5i64..=5) {
        let c = curve([1, -1, 1, -10, -20]);
        let order = 7;
        let fg = build_group_law(&q(), &c, order).unwrap();
        let mm = mul_by_m(&fg, m).unwrap().series;
        let mk = mul_by_m(&fg, k).unwrap().series;
        let mmk = mul_by_m(&fg, m * k).unwrap().series;
        prop_assert_eq!(mm.compose(&mk).unwrap(), mmk);
        prop_assert_eq!(mm.coeff(1), rat(m, 1));
    }
}

#[test]
fn padic_multiplication_reduces_rational_one() {
    let c = curve([0, 0, 1, -1, 0]);
    let ring = ZpMod::new(5, 20);
    let over_q = multiplication_series(&q(), &c, 5, 12).unwrap();
    let over_zp = multiplication_series(&ring, &c, 5, 12).unwrap();
    let mapped = over_q.map_ring(&ring, |x| ring.from_rational(x)).unwrap();
    assert_eq!(mapped, over_zp);
}

#[test]
fn supersingular_index_p5() {
    // y² = x³ + 1 is supersingular at 5.
    let c = curve([0, 0, 0, 0, 1]);
    let si = supersingular_index(&c, 5, 26).unwrap();
    assert_eq!((si.index, si.height), (25, Some(2)));
    // Too short a truncation cannot see the unit.
    assert!(matches!(supersingular_index(&c, 5, 25), Err(FormalError::Indeterminate { .. })));
}

#[test]
fn ordinary_index_is_p() {
    // 37a is ordinary at 5 (a_5 = −2).
    let c = curve([0, 0, 1, -1, 0]);
    assert!(!is_supersingular(&c, 5, 1).unwrap());
    let si = supersingular_index(&c, 5, 26).unwrap();
    assert_eq!((si.index, si.height), (5, Some(1)));
}

#[test]
fn supersingular_pairs_have_index_p_squared() {
    let curves = [[0, 0, 1, -1, 0], [0, -1, 1, -10, -20], [1, -1, 1, -10, -20], [0, 0, 1, -7, 6]];
    let mut seen = 0;
    for a in curves {
        let c = curve(a);
        for p in [13u64, 17, 19, 23] {
            if !c.has_good_reduction(p) || !is_supersingular(&c, p, 1).unwrap() {
                continue;
            }
            let si = supersingular_index(&c, p, (p * p + 1) as usize).unwrap();
            assert_eq!(si.index as u64, p * p, "curve {a:?} at {p}");
            seen += 1;
        }
    }
    assert!(seen >= 2, "expected supersingular pairs in the fixture set, found {seen}");
}

#[test]
fn alpha_examples() {
    assert_eq!(alpha(1, 25).unwrap().value, rat(1, 24));
    assert_eq!(alpha(24, 25).unwrap().value, rat(1, 1));
    assert_eq!(alpha(120, 121).unwrap().value, rat(1, 1));
    assert!(alpha(0, 25).is_err());
}

#[test]
fn tower_level_one() {
    let c = curve([0, 0, 0, 0, 1]);
    let pf = eisenstein_tower(&c, 5, 1, &TowerConfig::default()).unwrap();
    let l1 = pf.top();
    assert_eq!(l1.s, 25);
    assert_eq!(l1.g_degree, 24);
    assert!(l1.eisenstein);
    assert_eq!(l1.g_polygon.root_valuations(), vec![(rat(1, 24), 24)]);
    let tv = torsion_valuations(&pf).unwrap();
    assert_eq!(tv, vec![TorsionLevel { level: 1, valuation: rat(1, 24), multiplicity: 24 }]);
    assert_eq!(pf.polygon.zero_roots, 1);
}

#[test]
fn preparation_is_stable_under_guard() {
    let c = curve([0, 0, 0, 0, 1]);
    let ring = ZpMod::new(5, 40);
    let f = multiplication_series(&ring, &c, 5, 151).unwrap();
    let a = weierstrass_prepare(&f, 50).unwrap();
    let b = weierstrass_prepare(&f, 150).unwrap();
    // Roots have valuation 1/24, so guard D fixes F to about (D+1)/24 digits.
    let floor = ZpMod::new(5, 2);
    for (x, y) in a.distinguished.iter().zip(&b.distinguished) {
        assert_eq!(floor.reduce(x), floor.reduce(y));
    }
    assert_eq!(a.s, 25);
}

#[test]
fn tower_level_two() {
    let c = curve([0, 0, 0, 0, 1]);
    let pf = eisenstein_tower(&c, 5, 2, &TowerConfig::default()).unwrap();
    assert_eq!(pf.guard_degree, 1875);
    let degrees: Vec<usize> = pf.levels.iter().map(|l| l.g_degree).collect();
    assert_eq!(degrees, vec![24, 600]);
    assert_eq!(pf.top().s, 625);
    for l in &pf.levels {
        assert!(l.eisenstein, "g_{} not Eisenstein", l.n);
        assert_eq!(l.g_degree, l.predicted_degree);
        assert!(l.remainder_valuation.map_or(true, |v| v >= 40));
        let d = l.g_degree as i64;
        assert_eq!(l.g_polygon.root_valuations(), vec![(rat(1, d), l.g_degree)]);
    }
    let tv = torsion_valuations(&pf).unwrap();
    assert_eq!(
        tv,
        vec![
            TorsionLevel { level: 1, valuation: rat(1, 24), multiplicity: 24 },
            TorsionLevel { level: 2, valuation: rat(1, 600), multiplicity: 600 },
        ]
    );
    assert_eq!(1 + tv.iter().map(|t| t.multiplicity).sum::<usize>(), 625);
}

#[test]
fn tower_rejects_large_degree() {
    let c = curve([0, 0, 0, 0, 1]);
    assert!(matches!(eisenstein_tower(&c, 5, 3, &TowerConfig::default()), Err(FormalError::DeskBound { .. })));
}
