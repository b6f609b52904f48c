//! Local heights λ_v and the global decomposition ĥ = Σ_v λ_v.
//!
//! λ_v is normalised to be independent of the Weierstrass model: at ∞ it is
//! the q-series on ℂ/(ℤ + τℤ); at a finite p and P ∈ E₀(ℚ_p) it is
//! ½·max(−v(x), 0)·log p + (1/12)·v(Δ)·log p.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::exact::{ln_bigint, vp_int, vp_rational};

use super::periods::{elliptic_log_real, uniformize, Uniformization};
use super::{check_point, CanonicalError};

/// Largest multiple tried when moving P into the identity component and E₀.
pub const MAX_MULTIPLE: u32 = 120;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Place {
    Archimedean,
    Prime(u64),
    /// Primes of a denominator cofactor that trial division did not split;
    /// all of good reduction.
    Unfactored(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum LocalHeightMethod {
    GoodReduction,
    ArchSeries,
    MultFormula,
    /// Bad prime, point reducing to a nonsingular point.
    NonsingularReduction,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalHeightValue {
    pub place: Place,
    pub value: f64,
    pub method: LocalHeightMethod,
}

pub fn b2(x: f64) -> f64 {
    x * x - x + 1.0 / 6.0
}

/// The archimedean q-series with its bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct ArchSeries {
    pub value: f64,
    /// Product terms n = 1..=terms were summed.
    pub terms: u32,
    /// Bound on the omitted tail.
    pub tail_envelope: f64,
    /// Im w / Im τ after reduction to [0, 1).
    pub t: f64,
}

/// |1 − e^{2πiw}| without cancellation for w near 0.
fn one_minus_exp(w: Complex64) -> f64 {
    let (a, b) = (-2.0 * PI * w.im, 2.0 * PI * w.re);
    let re = a.exp_m1() * b.cos() - 2.0 * (0.5 * b).sin().powi(2);
    let im = a.exp() * b.sin();
    re.hypot(im)
}

/// Tail of Σ_{n>N} log|(1 − qⁿu)(1 − qⁿ/u)| for |u| = |q|^t, 0 ≤ t < 1.
pub fn arch_tail_envelope(abs_q: f64, t: f64, n: u32) -> f64 {
    let lo = abs_q.powf(n as f64 + 1.0 - t);
    let hi = abs_q.powf(n as f64 + 1.0 + t);
    (lo + hi) / ((1.0 - abs_q) * (1.0 - lo))
}

/// λ_∞ at the torus point w (in ℂ/(ℤ + τℤ)), summing until the tail is
/// below 10⁻¹⁷, or exactly `max_terms` product terms when given.
pub fn arch_series(w: Complex64, tau: Complex64, max_terms: Option<u32>) -> Result<ArchSeries, CanonicalError> {
    if !(tau.im > 0.0) {
        return Err(CanonicalError::BadInput("Im τ must be positive".into()));
    }
    let mut w = w;
    let shift = (w.im / tau.im).floor();
    w -= tau * shift;
    w -= Complex64::new(w.re.round(), 0.0);
    let t = (w.im / tau.im).clamp(0.0, 1.0);
    let abs_q = (-2.0 * PI * tau.im).exp();
    let log_abs_q = -2.0 * PI * tau.im;
    let one_minus_u = one_minus_exp(w);
    if one_minus_u == 0.0 {
        return Err(CanonicalError::AtOrigin);
    }
    let mut value = -0.5 * b2(t) * log_abs_q - one_minus_u.ln();
    let mut n = 0u32;
    loop {
        if let Some(m) = max_terms {
            if n >= m {
                break;
            }
        } else if arch_tail_envelope(abs_q, t, n) < 1e-17 || n >= 10_000 {
            break;
        }
        n += 1;
        let nt = tau * n as f64;
        value -= one_minus_exp(nt + w).ln() + one_minus_exp(nt - w).ln();
    }
    Ok(ArchSeries { value, terms: n, tail_envelope: arch_tail_envelope(abs_q, t, n), t })
}

/// λ_∞ at the torus point w = z/ω1.
pub fn local_height_arch(w: Complex64, unif: &Uniformization) -> Result<LocalHeightValue, CanonicalError> {
    let s = arch_series(w, unif.tau, None)?;
    Ok(LocalHeightValue { place: Place::Archimedean, value: s.value, method: LocalHeightMethod::ArchSeries })
}

fn on_identity_component(unif: &Uniformization, x: f64) -> bool {
    if !unif.roots.real_split {
        return true;
    }
    x >= 0.5 * (unif.roots.e1 + unif.roots.e2.re)
}

/// λ_∞ at a rational point of the identity component of E(ℝ).
pub fn local_height_arch_point(
    curve: &WeierstrassCurve,
    p: &CurvePoint,
    unif: &Uniformization,
) -> Result<LocalHeightValue, CanonicalError> {
    check_point(curve, p)?;
    let x = p.x().ok_or(CanonicalError::AtOrigin)?;
    let xf = x.to_f64().ok_or_else(|| CanonicalError::BadInput("x out of floating range".into()))?;
    if !on_identity_component(unif, xf) {
        return Err(CanonicalError::NotIdentityComponent);
    }
    let z = elliptic_log_real(curve, &unif.roots, xf)?;
    local_height_arch(Complex64::new(z, 0.0) / unif.omega1, unif)
}

/// ½·max(−v_p(x), 0)·log p at a prime of good reduction.
pub fn local_height_good_reduction(
    curve: &WeierstrassCurve,
    p: &CurvePoint,
    prime: u64,
) -> Result<LocalHeightValue, CanonicalError> {
    check_point(curve, p)?;
    if !curve.is_p_integral(prime) {
        return Err(CanonicalError::NotIntegral);
    }
    if !curve.has_good_reduction(prime) {
        return Err(CanonicalError::BadReductionPlace(prime));
    }
    let x = p.x().ok_or(CanonicalError::AtOrigin)?;
    let v = vp_rational(x, prime).unwrap_or(0);
    let value = 0.5 * (-v).max(0) as f64 * (prime as f64).ln();
    Ok(LocalHeightValue { place: Place::Prime(prime), value, method: LocalHeightMethod::GoodReduction })
}

#[derive(Clone, Debug, Serialize)]
pub struct MultFormulaValue {
    pub value: LocalHeightValue,
    /// −½·b₂(ratio)·log|q_v|_v, valid when |1 − q₀|_v ≤ 1.
    pub lower_bound: f64,
}

/// λ_v = −½·b₂(ratio)·log|q_v|_v − log|1 − q₀|_v at a multiplicative place,
/// from valuations: ratio = v(q₀)/v(q_v) ∈ (0, 1], v(q_v) > 0 and v(1 − q₀).
pub fn local_height_mult_formula(
    prime: u64,
    ratio: &BigRational,
    v_qv: &BigRational,
    v_one_minus_q0: &BigRational,
) -> Result<MultFormulaValue, CanonicalError> {
    if !ratio.is_positive() || *ratio > BigRational::one() {
        return Err(CanonicalError::BadInput(format!("ratio {ratio} is outside (0, 1]")));
    }
    if !v_qv.is_positive() {
        return Err(CanonicalError::BadInput("v(q_v) must be positive".into()));
    }
    let log_p = (prime as f64).ln();
    let r = ratio.to_f64().unwrap();
    let log_qv = -v_qv.to_f64().unwrap() * log_p;
    let log_1mq0 = -v_one_minus_q0.to_f64().unwrap() * log_p;
    let lower_bound = -0.5 * b2(r) * log_qv;
    let value = lower_bound - log_1mq0;
    Ok(MultFormulaValue {
        value: LocalHeightValue { place: Place::Prime(prime), value, method: LocalHeightMethod::MultFormula },
        lower_bound,
    })
}

/// P reduces to a nonsingular point mod p (x need not be p-integral).
fn in_e0(curve: &WeierstrassCurve, x: &BigRational, y: &BigRational, p: u64) -> bool {
    let positive = |q: BigRational| q.is_zero() || vp_rational(&q, p).unwrap() > 0;
    if vp_rational(x, p).map_or(false, |v| v < 0) {
        return true;
    }
    let three = BigRational::from_integer(3.into());
    let two = BigRational::from_integer(2.into());
    let dfdx = &three * x * x + &two * &curve.a2 * x + &curve.a4 - &curve.a1 * y;
    let dfdy = &two * y + &curve.a1 * x + &curve.a3;
    !(positive(dfdx) && positive(dfdy))
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalSum {
    pub value: f64,
    /// m with [m]P on the identity component and in E₀ at every bad prime;
    /// ĥ(P) = Σ λ_v([m]P) / m². Zero when P is torsion.
    pub multiple: u32,
    pub torsion: bool,
    pub places: Vec<LocalHeightValue>,
}

fn trial_factor(mut n: BigInt, limit: u64) -> (Vec<(u64, u32)>, BigInt) {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= limit && n > BigInt::one() {
        let bd = BigInt::from(d);
        let mut e = 0;
        while (&n % &bd).is_zero() {
            n /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        if &bd * &bd > n {
            if n > BigInt::one() {
                if let Some(p) = n.to_u64() {
                    out.push((p, 1));
                    n = BigInt::one();
                }
            }
            break;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    (out, n)
}

/// ĥ(P) = Σ_v λ_v by the local decomposition. Needs an integral model.
pub fn canonical_height_local_sum(curve: &WeierstrassCurve, p: &CurvePoint) -> Result<LocalSum, CanonicalError> {
    check_point(curve, p)?;
    if !curve.is_integral() {
        return Err(CanonicalError::NotIntegral);
    }
    let torsion = |m| Ok(LocalSum { value: 0.0, multiple: m, torsion: true, places: Vec::new() });
    // Mazur: a rational torsion point has order at most 12.
    if let Some(m) = curve.torsion_order(p, 12) {
        return torsion(m);
    }
    let unif = uniformize(curve)?;
    let bad = curve.bad_primes();
    let mut q = p.clone();
    let mut m = 1u32;
    let x = loop {
        match &q {
            CurvePoint::Infinity => return torsion(m),
            CurvePoint::Affine { x, y } => {
                let real_ok = on_identity_component(&unif, x.to_f64().unwrap_or(f64::INFINITY));
                if real_ok && bad.iter().all(|&l| in_e0(curve, x, y, l)) {
                    break x.clone();
                }
            }
        }
        if m >= MAX_MULTIPLE {
            return Err(CanonicalError::TooManyMultiples(MAX_MULTIPLE));
        }
        q = curve.add(&q, p);
        m += 1;
    };

    let mut places = vec![local_height_arch_point(curve, &q, &unif)?];
    let disc = curve.discriminant.numer().abs();
    let mut den = x.denom().clone();
    for &l in &bad {
        let bl = BigInt::from(l);
        let vd = vp_int(&disc, l).ok().and_then(|v| v.finite()).unwrap_or(0) as f64;
        let mut vx = 0u32;
        while (&den % &bl).is_zero() {
            den /= &bl;
            vx += 1;
        }
        let log_l = (l as f64).ln();
        places.push(LocalHeightValue {
            place: Place::Prime(l),
            value: (0.5 * vx as f64 + vd / 12.0) * log_l,
            method: LocalHeightMethod::NonsingularReduction,
        });
    }
    // The rest of the denominator involves good primes only; x = a/d² for an
    // integral model, so factor d.
    let d = den.sqrt();
    let (d, rest) = if &d * &d == den { (d, BigInt::one()) } else { (BigInt::one(), den) };
    let (found, cofactor) = trial_factor(d, 100_000);
    for (l, e) in found {
        places.push(LocalHeightValue {
            place: Place::Prime(l),
            value: e as f64 * (l as f64).ln(),
            method: LocalHeightMethod::GoodReduction,
        });
    }
    let leftover = &cofactor * &cofactor * rest;
    if leftover > BigInt::one() {
        places.push(LocalHeightValue {
            place: Place::Unfactored(leftover.to_string()),
            value: 0.5 * ln_bigint(&leftover),
            method: LocalHeightMethod::GoodReduction,
        });
    }
    let total: f64 = places.iter().map(|l| l.value).sum();
    let value = total / (m as f64 * m as f64);
    Ok(LocalSum { value, multiple: m, torsion: false, places })
}
