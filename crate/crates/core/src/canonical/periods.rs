//! Periods, τ, q and the elliptic logarithm of real points, via the AGM and
//! double-exponential quadrature.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::curve::WeierstrassCurve;
use crate::height::find_roots;

use super::CanonicalError;

fn f64_of(q: &num_rational::BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Real arithmetic–geometric mean.
pub fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        if (a - b).abs() <= 1e-16 * a.abs() {
            break;
        }
        (a, b) = (0.5 * (a + b), (a * b).sqrt());
    }
    a
}

/// Roots of 4x³ + b2x² + 2b4x + b6: (e1, e2, e3), e1 the largest real root.
/// For Δ < 0, e2 and e3 are the complex pair with Im e2 > 0.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct TwoTorsionRoots {
    pub e1: f64,
    pub e2: Complex64,
    pub e3: Complex64,
    pub real_split: bool,
}

pub fn cubic_roots(curve: &WeierstrassCurve) -> TwoTorsionRoots {
    let (b2, b4, b6) = (f64_of(&curve.b2), f64_of(&curve.b4), f64_of(&curve.b6));
    let c = [b6, 2.0 * b4, b2, 4.0];
    let polish = |mut z: Complex64| {
        for _ in 0..6 {
            let p = ((c[3] * z + c[2]) * z + c[1]) * z + c[0];
            let dp = (3.0 * c[3] * z + 2.0 * c[2]) * z + c[1];
            if dp.norm() == 0.0 {
                break;
            }
            z -= p / dp;
        }
        z
    };
    let mut r: Vec<Complex64> = find_roots(&c).disks.iter().map(|d| polish(d.center)).collect();
    let real_split = num_traits::Signed::is_positive(&curve.discriminant);
    if real_split {
        let mut re: Vec<f64> = r.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| b.total_cmp(a));
        TwoTorsionRoots { e1: re[0], e2: re[1].into(), e3: re[2].into(), real_split }
    } else {
        r.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
        let e1 = r[0].re;
        let (mut e2, mut e3) = (r[1], r[2]);
        if e2.im < 0.0 {
            std::mem::swap(&mut e2, &mut e3);
        }
        TwoTorsionRoots { e1, e2, e3, real_split }
    }
}

/// The lattice of the invariant differential, in a reduced basis.
#[derive(Clone, Debug, Serialize)]
pub struct Uniformization {
    /// Real period: the least positive real lattice vector.
    pub real_period: f64,
    pub omega1: Complex64,
    pub omega2: Complex64,
    /// τ = ω2/ω1 in the standard fundamental domain.
    pub tau: Complex64,
    pub q: Complex64,
    pub roots: TwoTorsionRoots,
    /// |j(τ) − j(E)| / max(1, |j(E)|).
    pub j_relative_error: f64,
    /// How the basis was obtained.
    pub provenance: String,
}

/// Klein's j from q via Eisenstein series E4, E6.
pub fn j_from_q(q: Complex64) -> Complex64 {
    let mut e4 = Complex64::new(1.0, 0.0);
    let mut e6 = Complex64::new(1.0, 0.0);
    let mut qn = Complex64::new(1.0, 0.0);
    for n in 1..400u32 {
        qn *= q;
        if qn.norm() < 1e-18 {
            break;
        }
        let (mut s3, mut s5) = (0f64, 0f64);
        for d in 1..=n {
            if n % d == 0 {
                let d = d as f64;
                s3 += d.powi(3);
                s5 += d.powi(5);
            }
        }
        e4 += qn * (240.0 * s3);
        e6 -= qn * (504.0 * s5);
    }
    let e43 = e4 * e4 * e4;
    e43 * 1728.0 / (e43 - e6 * e6)
}

/// Periods by the AGM, reduced to the fundamental domain and checked against j.
pub fn uniformize(curve: &WeierstrassCurve) -> Result<Uniformization, CanonicalError> {
    let roots = cubic_roots(curve);
    let b2 = f64_of(&curve.b2);
    let b4 = f64_of(&curve.b4);
    let (w1, w2) = if roots.real_split {
        let (e1, e2, e3) = (roots.e1, roots.e2.re, roots.e3.re);
        let w1 = PI / agm((e1 - e3).sqrt(), (e1 - e2).sqrt());
        let w2 = Complex64::new(0.0, PI / agm((e1 - e3).sqrt(), (e2 - e3).sqrt()));
        (Complex64::new(w1, 0.0), w2)
    } else {
        let e1 = roots.e1;
        let beta = (3.0 * e1 * e1 + 0.5 * b2 * e1 + 0.5 * b4).sqrt();
        let alpha = 3.0 * e1 + 0.25 * b2;
        let w1 = 2.0 * PI / agm(2.0 * beta.sqrt(), (2.0 * beta + alpha).sqrt());
        let w2 = Complex64::new(-0.5 * w1, PI / agm(2.0 * beta.sqrt(), (2.0 * beta - alpha).sqrt()));
        (Complex64::new(w1, 0.0), w2)
    };
    if !(w1.re.is_finite() && w2.im.is_finite() && w2.im != 0.0) {
        return Err(CanonicalError::PeriodFailure("AGM produced a degenerate lattice".into()));
    }
    let real_period = w1.re;
    let (omega1, omega2) = reduce_basis(w1, w2);
    let tau = omega2 / omega1;
    let q = (Complex64::new(0.0, 2.0 * PI) * tau).exp();
    let j = f64_of(&curve.j_invariant);
    let j_relative_error = (j_from_q(q) - j).norm() / j.abs().max(1.0);
    if !(j_relative_error < 1e-6) {
        return Err(CanonicalError::PeriodFailure(format!("j(τ) disagrees with j(E): relative error {j_relative_error:e}")));
    }
    let provenance = if roots.real_split {
        "AGM on e1 > e2 > e3 (rectangular lattice), SL2(Z)-reduced".into()
    } else {
        "AGM on the real root and the complex pair, SL2(Z)-reduced".into()
    };
    Ok(Uniformization { real_period, omega1, omega2, tau, q, roots, j_relative_error, provenance })
}

/// Reduces (ω1, ω2) so that τ = ω2/ω1 has Im τ > 0, |Re τ| ≤ ½ and |τ| ≥ 1.
fn reduce_basis(mut w1: Complex64, mut w2: Complex64) -> (Complex64, Complex64) {
    if (w2 / w1).im < 0.0 {
        w2 = -w2;
    }
    for _ in 0..100 {
        let tau = w2 / w1;
        let k = tau.re.round();
        w2 -= w1 * k;
        let tau = w2 / w1;
        if tau.norm_sqr() < 1.0 - 1e-14 {
            (w1, w2) = (w2, -w1);
        } else {
            break;
        }
    }
    (w1, w2)
}

/// ∫_s0^∞ ds / √g(e1 + s²) by the exp-sinh rule; g = f/(4(t − e1)) is a
/// positive quadratic for t ≥ e1, so the integrand is smooth and ~1/s².
fn tail_integral(s0: f64, c1: f64, c0: f64) -> f64 {
    let g = |s: f64| {
        let t = s * s;
        // g(e1 + t) written around e1 to avoid cancellation.
        ((t + c1) * t + c0).sqrt().recip()
    };
    let rule = |h: f64| {
        let mut sum = 0.0;
        let mut k = 0i64;
        loop {
            let mut added = 0.0;
            for t in if k == 0 { vec![0.0] } else { vec![k as f64 * h, -(k as f64) * h] } {
                let e = (0.5 * PI * t.sinh()).exp();
                let s = s0 + e;
                let w = 0.5 * PI * t.cosh() * e;
                let v = g(s) * w;
                if v.is_finite() {
                    added += v;
                }
            }
            sum += added;
            k += 1;
            if (added.abs() < 1e-18 * sum.abs() && k > 8) || k > 4000 {
                break;
            }
        }
        sum * h
    };
    let coarse = rule(1.0 / 16.0);
    let fine = rule(1.0 / 32.0);
    if (coarse - fine).abs() > 1e-13 * fine.abs() {
        rule(1.0 / 64.0)
    } else {
        fine
    }
}

/// Coefficients of g(e1 + t) = t² + c1·t + c0.
fn shifted_quadratic(curve: &WeierstrassCurve, e1: f64) -> (f64, f64) {
    let b2 = f64_of(&curve.b2);
    let b4 = f64_of(&curve.b4);
    // f(t)/4 = (t − e1)(t² + βt + γ); expand g around e1.
    let beta = b2 / 4.0 + e1;
    let gamma = b4 / 2.0 + e1 * beta;
    (2.0 * e1 + beta, e1 * e1 + beta * e1 + gamma)
}

/// z(P) = ∫_{x(P)}^∞ dt/√f(t) for a real point on the identity component
/// (x ≥ e1). The sign of z is not tracked: λ is even.
pub fn elliptic_log_real(curve: &WeierstrassCurve, roots: &TwoTorsionRoots, x: f64) -> Result<f64, CanonicalError> {
    let d = x - roots.e1;
    if d < -1e-9 * roots.e1.abs().max(1.0) {
        return Err(CanonicalError::NotIdentityComponent);
    }
    let (c1, c0) = shifted_quadratic(curve, roots.e1);
    Ok(tail_integral(d.max(0.0).sqrt(), c1, c0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(a: [i64; 5]) -> WeierstrassCurve {
        WeierstrassCurve::from_ints(a).unwrap()
    }

    #[test]
    fn square_lattice() {
        let u = uniformize(&curve([0, 0, 0, 1, 0])).unwrap();
        assert!((u.tau - Complex64::new(0.0, 1.0)).norm() < 1e-12, "τ = {}", u.tau);
        assert!((u.q.re - (-2.0 * PI).exp()).abs() < 1e-15);
        assert!(u.j_relative_error < 1e-8);
    }

    #[test]
    fn half_period_matches_quadrature() {
        for a in [[0, 0, 1, -1, 0], [0, 0, 0, 0, -2], [0, 1, 1, -2, 0], [0, 0, 0, 0, 17], [1, -1, 1, -10, -20]] {
            let c = curve(a);
            let u = uniformize(&c).unwrap();
            assert!(u.q.norm() < 1.0);
            assert!(u.j_relative_error < 1e-8, "{a:?}: {}", u.j_relative_error);
            let half = elliptic_log_real(&c, &u.roots, u.roots.e1).unwrap();
            assert!((2.0 * half - u.real_period).abs() < 1e-12 * u.real_period, "{a:?}: {} vs {}", 2.0 * half, u.real_period);
        }
    }

    #[test]
    fn j_of_i_is_1728() {
        let q = Complex64::new((-2.0 * PI).exp(), 0.0);
        assert!((j_from_q(q).re - 1728.0).abs() < 1e-9);
    }
}
