//! ĥ(P) = lim h([2^n]P) / (2·4^n), organised so no big numbers appear.
//!
//! Write x([2^k]P) = X_k/Z_k in lowest terms and
//! F = X⁴ − b4X²Z² − 2b6XZ³ − b8Z⁴, G = 4X³Z + b2X²Z² + 2b4XZ³ + b6Z⁴.
//! Then log max(|X_{k+1}|, |Z_{k+1}|) = 4·log max(|X_k|, |Z_k|) + a_k − g_k,
//! where a_k = log max(|F|, |G|) at the normalised point (max = 1) and g_k is
//! the log of gcd(F, G), which only involves primes dividing 2Δ. The a_k are
//! computed in floating point, the g_k by p-adic tracking, and the telescoped
//! sum gives h([2^n]P)/4^n without ever forming [2^n]P.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::curve::{CurvePoint, WeierstrassCurve};
use crate::exact::{ln_bigint, vp_int, Valuation};

use super::{naive_height, CanonicalError};

#[derive(Clone, Debug, Serialize)]
pub struct CanonicalHeightEstimate {
    pub value: f64,
    pub iterations: u32,
    /// |ĥ − value| ≤ tail_bound, from the observed increments times 4^{−n}.
    pub tail_bound: f64,
    /// The estimates h([2^k]P)/(2·4^k), k = 0..=n.
    pub sequence: Vec<f64>,
}

/// Default number of doublings.
pub const DEFAULT_DOUBLINGS: u32 = 28;

fn integer_b(curve: &WeierstrassCurve) -> Result<[BigInt; 4], CanonicalError> {
    if !curve.is_integral() {
        return Err(CanonicalError::NotIntegral);
    }
    let i = |q: &BigRational| q.to_integer();
    Ok([i(&curve.b2), i(&curve.b4), i(&curve.b6), i(&curve.b8)])
}

fn fg_big(b: &[BigInt; 4], x: &BigInt, z: &BigInt) -> (BigInt, BigInt) {
    let [b2, b4, b6, b8] = b;
    let (x2, z2) = (x * x, z * z);
    let f = &x2 * &x2 - b4 * &x2 * &z2 - BigInt::from(2) * b6 * x * &z2 * z - b8 * &z2 * &z2;
    let g = BigInt::from(4) * &x2 * x * z + b2 * &x2 * &z2 + BigInt::from(2) * b4 * x * &z2 * z + b6 * &z2 * &z2;
    (f, g)
}

fn fg_f64(b: &[f64; 4], x: f64, z: f64) -> (f64, f64) {
    let [b2, b4, b6, b8] = *b;
    let (x2, z2) = (x * x, z * z);
    let f = x2 * x2 - b4 * x2 * z2 - 2.0 * b6 * x * z2 * z - b8 * z2 * z2;
    let g = 4.0 * x2 * x * z + b2 * x2 * z2 + 2.0 * b4 * x * z2 * z + b6 * z2 * z2;
    (f, g)
}

/// Tracks (X : Z) over ℤ_p to follow v_p(gcd(F, G)) along the doubling orbit.
struct PadicTrack {
    p: u64,
    bp: BigInt,
    modulus: BigInt,
    digits: u32,
    x: BigInt,
    z: BigInt,
}

impl PadicTrack {
    fn val(&self, a: &BigInt) -> Option<u32> {
        match vp_int(&a.mod_floor(&self.modulus), self.p).ok()? {
            Valuation::Finite(v) if (v as u32) < self.digits => Some(v as u32),
            _ => None,
        }
    }

    /// v_p of gcd(F, G) at the current point, then advance to the double.
    fn step(&mut self, b: &[BigInt; 4]) -> Result<u32, CanonicalError> {
        let (f, g) = fg_big(b, &self.x, &self.z);
        let (f, g) = (f.mod_floor(&self.modulus), g.mod_floor(&self.modulus));
        let v = match (self.val(&f), self.val(&g)) {
            (Some(a), Some(c)) => a.min(c),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => return Err(CanonicalError::PrecisionExhausted(self.p)),
        };
        let scale = self.bp.pow(v);
        self.x = f / &scale;
        self.z = g / &scale;
        self.digits -= v;
        self.modulus = self.bp.pow(self.digits);
        self.x = self.x.mod_floor(&self.modulus);
        self.z = self.z.mod_floor(&self.modulus);
        Ok(v)
    }
}

/// ĥ(P) by the doubling limit.
pub fn canonical_height_doubling(
    curve: &WeierstrassCurve,
    point: &CurvePoint,
    n_iters: u32,
) -> Result<CanonicalHeightEstimate, CanonicalError> {
    let b = integer_b(curve)?;
    let Some(x) = point.x() else {
        return Ok(CanonicalHeightEstimate { value: 0.0, iterations: 0, tail_bound: 0.0, sequence: vec![0.0] });
    };
    let (x0, z0) = (x.numer().clone(), x.denom().clone());
    let h0 = ln_bigint(&x0.abs().max(z0.clone()));
    let bf = [0, 1, 2, 3].map(|i| b[i].to_f64().unwrap());

    // Archimedean orbit, normalised so max(|X|, |Z|) = 1.
    let m = x0.abs().max(z0.clone());
    let mut xa = BigRational::new(x0.clone(), m.clone()).to_f64().unwrap();
    let mut za = BigRational::new(z0.clone(), m).to_f64().unwrap();

    let primes: Vec<u64> = {
        let mut ps = curve.bad_primes();
        if !ps.contains(&2) {
            ps.push(2);
        }
        ps
    };
    // Each step loses at most v_p(Res(F, G)) ≤ 2·v_p(16Δ) digits.
    let mut tracks: Vec<PadicTrack> = primes
        .iter()
        .map(|&p| {
            let vd = match vp_int(&(curve.discriminant.numer() * BigInt::from(16)), p) {
                Ok(Valuation::Finite(v)) => v as u32,
                _ => 0,
            };
            let digits = (2 * vd + 2) * (n_iters + 2) + 16;
            let bp = BigInt::from(p);
            let modulus = bp.pow(digits);
            PadicTrack { p, x: x0.mod_floor(&modulus), z: z0.mod_floor(&modulus), bp, modulus, digits }
        })
        .collect();

    let mut acc = h0;
    let mut sequence = vec![h0 / 2.0];
    let mut max_term: f64 = 0.0;
    let mut weight = 1.0;
    for _ in 0..n_iters {
        let (f, g) = fg_f64(&bf, xa, za);
        let mx = f.abs().max(g.abs());
        let a_k = mx.ln();
        (xa, za) = (f / mx, g / mx);
        let mut g_k = 0.0;
        for t in tracks.iter_mut() {
            g_k += t.step(&b)? as f64 * (t.p as f64).ln();
        }
        let term = a_k - g_k;
        max_term = max_term.max(term.abs());
        weight /= 4.0;
        acc += weight * term;
        sequence.push(acc / 2.0);
    }
    let value = acc / 2.0;
    // Remaining terms are bounded like the observed ones: Σ_{k>n} 4^{−k}·M/2.
    let tail_bound = 2.0 * max_term * weight / 3.0 / 2.0 + 1e-15 * value.abs();
    Ok(CanonicalHeightEstimate { value, iterations: n_iters, tail_bound, sequence })
}

/// h([2^k]P)/(2·4^k) for k = 0..=n by exact rational doubling; the reference
/// the telescoped computation is tested against for small n.
pub fn naive_doubling_sequence(curve: &WeierstrassCurve, point: &CurvePoint, n: u32) -> Vec<f64> {
    let mut out = Vec::new();
    let mut p = point.clone();
    let mut w = 1.0;
    for _ in 0..=n {
        out.push(naive_height(&p).value / w);
        p = curve.double(&p);
        w *= 4.0;
    }
    out
}
