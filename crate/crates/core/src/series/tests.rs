use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::padic::ZpMod;

const Q: Rationals = Rationals;

fn s(c: &[i64], order: usize) -> Series1<Rationals> {
    Series1::from_i64s(&Q, order, c)
}

#[test]
fn products() {
    assert_eq!(&s(&[1, 1], 5) * &s(&[1, -1], 5), s(&[1, 0, -1], 5));
    assert!((&s(&[1, 2, 3], 5) * &Series1::zero(&Q, 5)).is_zero());
    // Telescoping: (Σ T^i)(1 − T) = 1 − T^O, truncated to 1.
    let geo = s(&[1; 8], 8);
    assert_eq!(&geo * &s(&[1, -1], 8), s(&[1], 8));
}

#[test]
fn compositions() {
    let g = s(&[0, 3, -1, 4], 7);
    assert_eq!(s(&[0, 1], 7).compose(&g).unwrap(), g);
    assert_eq!(s(&[0, 0, 1], 7).compose(&s(&[0, 1, 1], 7)).unwrap(), s(&[0, 0, 1, 2, 1], 7));
    let geo = s(&[1; 9], 9);
    assert_eq!(geo.compose(&s(&[0, 0, 1], 9)).unwrap(), s(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 9));
    assert_eq!(geo.compose(&s(&[1, 1], 9)), Err(SeriesError::NonzeroConstant));
}

#[test]
fn reversion_catalan() {
    let order = 10;
    let r = s(&[0, 1, 1], order).reversion().unwrap();
    // Lagrange inversion: coefficient of T^n is (−1)^{n−1} C_{n−1}.
    let mut catalan = vec![BigInt::from(1)];
    for n in 1..order {
        let c = &catalan[n - 1] * BigInt::from(2 * (2 * n as i64 - 1)) / BigInt::from(n as i64 + 1);
        catalan.push(c);
    }
    for n in 1..order {
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(r.coeff(n), BigRational::from_integer(&catalan[n - 1] * sign), "n = {n}");
    }
    assert_eq!(s(&[0, 1], 6).reversion().unwrap(), s(&[0, 1], 6));
    assert_eq!(s(&[0, 0, 1], 6).reversion(), Err(SeriesError::NotInvertible));
}

#[test]
fn two_variable_composition() {
    let x: Series2<Rationals> = SeriesN::var(&Q, 6, 0);
    let y: Series2<Rationals> = SeriesN::var(&Q, 6, 1);
    let t = s(&[0, 1], 6);
    assert_eq!(series_compose2(&(&x + &y), &t, &t).unwrap(), s(&[0, 2], 6));
    assert_eq!(series_compose2(&(&x * &y), &t, &s(&[0, 0, 1], 6)).unwrap(), s(&[0, 0, 0, 1], 6));
}

#[test]
fn multivariate_inverse() {
    let x: Series2<Rationals> = SeriesN::var(&Q, 7, 0);
    let one = SeriesN::constant(&Q, 7, Q.one());
    let f = &one - &x;
    let g = f.inverse().unwrap();
    assert_eq!(&f * &g, one);
}

#[test]
fn domain_mismatch() {
    let a = Series1::one(&ZpMod::new(5, 10), 4);
    let b = Series1::one(&ZpMod::new(7, 10), 4);
    assert_eq!(a.try_mul(&b), Err(SeriesError::DomainMismatch));
}

#[test]
fn padic_inverse_and_shift() {
    let r = ZpMod::new(5, 20);
    let f = Series1::from_i64s(&r, 12, &[1, 5, 3, 0, 7]);
    let g = f.inverse().unwrap();
    assert_eq!(f.try_mul(&g).unwrap(), Series1::one(&r, 12));
    let h = Series1::from_i64s(&r, 12, &[0, 0, 2, 1]);
    assert_eq!(h.shift_down(2).unwrap(), Series1::from_i64s(&r, 10, &[2, 1]));
    assert_eq!(h.shift_down(3), Err(SeriesError::NotDivisible));
}

#[test]
fn large_products_match_serial() {
    // Above the parallel threshold; compare against a naive convolution.
    let r = ZpMod::new(5, 30);
    let order = 400;
    let a: Vec<i64> = (0..order as i64).map(|i| (i * 37 + 11) % 101 - 50).collect();
    let b: Vec<i64> = (0..order as i64).map(|i| (i * 53 + 7) % 89 - 44).collect();
    let prod = Series1::from_i64s(&r, order, &a).try_mul(&Series1::from_i64s(&r, order, &b)).unwrap();
    for k in [0, 1, 57, 200, 399] {
        let naive: i64 = (0..=k).map(|i| a[i] * b[k - i]).sum();
        assert_eq!(prod.coeff(k), r.from_i64(naive));
    }
}

fn small_series(order: usize, zero_const: bool) -> impl Strategy<Value = Series1<Rationals>> {
    prop::collection::vec(-4i64..=4, order).prop_map(move |mut v| {
        if zero_const {
            v[0] = 0;
        }
        Series1::from_i64s(&Q, order, &v)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn composition_is_associative(
        f in small_series(9, false),
        g in small_series(9, true),
        h in small_series(9, true),
    ) {
        let left = f.compose(&g).unwrap().compose(&h).unwrap();
        let right = f.compose(&g.compose(&h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn reversion_is_an_involution(mut g in small_series(10, true), lead in 1i64..4) {
        g.set(1, BigRational::from_integer(lead.into()));
        let r = g.reversion().unwrap();
        prop_assert_eq!(r.reversion().unwrap(), g.clone());
        prop_assert_eq!(g.compose(&r).unwrap(), Series1::var(&Q, 10));
    }

    #[test]
    fn inverse_roundtrip(mut f in small_series(12, false), c in 1i64..5) {
        f.set(0, BigRational::from_integer(c.into()));
        let g = f.inverse().unwrap();
        prop_assert_eq!(f.try_mul(&g).unwrap(), Series1::one(&Q, 12));
    }
}
