//! Absolute logarithmic Weil heights of algebraic numbers.
//!
//! h(α) is computed from the minimal polynomial a·Π(x − ρ_i) as
//! (1/d)·(log|a| + Σ log⁺|ρ_i|), the log Mahler measure over the degree.
//! Summing d_v·log⁺|α|_v over the places of ℚ(α) gives the same number: the
//! finite places contribute exactly log|a| (Gauss's lemma), the infinite ones
//! Σ log⁺|ρ_i|.

mod compose;
mod factor;
mod roots;
mod zpoly;

pub use compose::{bareiss_det, factor_near, power_resultant, product_resultant, resultant, sum_resultant};
pub use factor::{factor, factor_mod_p, factor_squarefree, rational_root};
pub use roots::{find_roots, RootDisk, Roots};
pub use zpoly::IntPoly;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exact::ln_bigint;

/// Largest minimal-polynomial degree accepted.
pub const MAX_DEGREE: usize = 24;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HeightError {
    #[error("polynomial is zero or constant")]
    Constant,
    #[error("degree {0} exceeds the desk bound {MAX_DEGREE}")]
    DeskBound(usize),
    #[error("polynomial is reducible over ℚ: {0}")]
    Reducible(String),
    #[error("root finder did not converge; partial height {partial:?}")]
    NoConvergence { partial: HeightValue },
    #[error("bad input: {0}")]
    BadInput(String),
}

/// An algebraic number given by its minimal polynomial (primitive, positive
/// leading coefficient, irreducible over ℚ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraicNumber {
    minpoly: IntPoly,
    pub label: Option<String>,
}

impl AlgebraicNumber {
    /// Certifies irreducibility before accepting the polynomial.
    pub fn new(coeffs: Vec<BigInt>) -> Result<AlgebraicNumber, HeightError> {
        let f = IntPoly::new(coeffs).primitive();
        let d = f.degree().filter(|&d| d > 0).ok_or(HeightError::Constant)?;
        if d > MAX_DEGREE {
            return Err(HeightError::DeskBound(d));
        }
        if d > 1 {
            if rational_root(&f).is_some() || !f.is_squarefree() {
                return Err(HeightError::Reducible(f.to_string()));
            }
            let facs = factor_squarefree(&f);
            if facs.len() != 1 {
                return Err(HeightError::Reducible(f.to_string()));
            }
        }
        Ok(AlgebraicNumber { minpoly: f, label: None })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<AlgebraicNumber, HeightError> {
        AlgebraicNumber::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn rational(q: &BigRational) -> AlgebraicNumber {
        let f = IntPoly::new(vec![-q.numer().clone(), q.denom().clone()]).primitive();
        AlgebraicNumber { minpoly: f, label: Some(q.to_string()) }
    }

    /// Skips the irreducibility check; callers must know the polynomial is irreducible.
    pub(crate) fn trusted(minpoly: IntPoly) -> AlgebraicNumber {
        AlgebraicNumber { minpoly: minpoly.primitive(), label: None }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.degree() == 1 && self.minpoly.coeff(0).is_zero()
    }

    /// Complex approximations of the conjugates.
    pub fn conjugates(&self) -> Vec<Complex64> {
        find_roots(&self.minpoly.to_f64s()).disks.iter().map(|d| d.center).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeightValue {
    pub value: f64,
    /// Radius around `value` that contains the true height.
    pub error_bound: f64,
}

fn log_plus(x: f64) -> f64 {
    if x > 1.0 {
        x.ln()
    } else {
        0.0
    }
}

/// h(α) = (1/d)·(log|a_d| + Σ log⁺|ρ_i|).
pub fn weil_height(alpha: &AlgebraicNumber) -> Result<HeightValue, HeightError> {
    let f = &alpha.minpoly;
    let d = alpha.degree();
    if d == 1 {
        // h(−b/a) = log max(|a|, |b|), exactly.
        let m = f.coeff(0).abs().max(f.coeff(1).abs());
        let value = ln_bigint(&m);
        return Ok(HeightValue { value, error_bound: 4.0 * f64::EPSILON * value.max(1.0) });
    }
    let roots = find_roots(&f.to_f64s());
    let mut sum = ln_bigint(f.lead().unwrap());
    let mut err = 4.0 * f64::EPSILON * sum.abs();
    for disk in &roots.disks {
        let r = disk.center.norm();
        sum += log_plus(r);
        let hi = log_plus(r + disk.radius);
        let lo = log_plus((r - disk.radius).max(0.0));
        err += (hi - lo) + 4.0 * f64::EPSILON * log_plus(r);
    }
    let hv = HeightValue { value: (sum / d as f64).max(0.0), error_bound: err / d as f64 };
    if roots.converged {
        Ok(hv)
    } else {
        Err(HeightError::NoConvergence { partial: hv })
    }
}

/// Euler's φ.
fn totient(mut n: usize) -> usize {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Kronecker's test: α is a root of unity iff its minimal polynomial divides
/// x^L − 1 for some L with φ(L) = deg.
pub fn is_root_of_unity(alpha: &AlgebraicNumber) -> bool {
    let f = &alpha.minpoly;
    let d = alpha.degree();
    if !f.lead().unwrap().is_one() || f.coeff(0).abs() != BigInt::one() {
        return false;
    }
    // φ(L) ≥ √(L/2), so φ(L) = d forces L ≤ 2d².
    (1..=2 * d * d + 2)
        .filter(|&l| totient(l) == d)
        .any(|l| IntPoly::x_pow_minus_one(l).div_exact(f).is_some())
}

/// Minimal polynomial of α^k.
pub fn power(alpha: &AlgebraicNumber, k: i32) -> Result<AlgebraicNumber, HeightError> {
    if k == 0 {
        return Ok(AlgebraicNumber::rational(&BigRational::one()));
    }
    if alpha.is_zero() {
        return if k > 0 { Ok(alpha.clone()) } else { Err(HeightError::BadInput("0 has no inverse".into())) };
    }
    let base = if k < 0 { alpha.minpoly.reversed().primitive() } else { alpha.minpoly.clone() };
    let r = power_resultant(&base, k.unsigned_abs());
    // Π(x − ρ^k) is a power of the minimal polynomial of α^k.
    Ok(AlgebraicNumber::trusted(r.squarefree()))
}

/// Minimal polynomial of ρ·σ for the first listed conjugates ρ of α and σ of β.
pub fn product(alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> Result<AlgebraicNumber, HeightError> {
    let d = alpha.degree() * beta.degree();
    if d > MAX_DEGREE {
        return Err(HeightError::DeskBound(d));
    }
    if alpha.is_zero() || beta.is_zero() {
        return Ok(AlgebraicNumber::rational(&BigRational::zero()));
    }
    let target = alpha.conjugates()[0] * beta.conjugates()[0];
    let r = product_resultant(&alpha.minpoly, &beta.minpoly);
    Ok(AlgebraicNumber::trusted(factor_near(&r, target)))
}

/// Minimal polynomial of ρ + σ for the first listed conjugates.
pub fn sum(alpha: &AlgebraicNumber, beta: &AlgebraicNumber) -> Result<AlgebraicNumber, HeightError> {
    let d = alpha.degree() * beta.degree();
    if d > MAX_DEGREE {
        return Err(HeightError::DeskBound(d));
    }
    let target = alpha.conjugates()[0] + beta.conjugates()[0];
    let r = sum_resultant(&alpha.minpoly, &beta.minpoly);
    Ok(AlgebraicNumber::trusted(factor_near(&r, target)))
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub law: String,
    pub inputs: Vec<String>,
    pub lhs: f64,
    pub rhs: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HeightLawReport {
    pub checks: Vec<LawCheck>,
    /// Compositions skipped for exceeding the desk degree, with the reason.
    pub skipped: Vec<String>,
}

impl HeightLawReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn name(a: &AlgebraicNumber) -> String {
    a.label.clone().unwrap_or_else(|| a.minpoly.to_string())
}

/// Checks the height laws on a sample set:
/// h(αβ) ≤ h(α) + h(β), h(α+β) ≤ h(α) + h(β) + log 2, h(α^k) = |k|·h(α),
/// h(ζα) = h(α) for roots of unity ζ in the samples, and equal heights for
/// every conjugate.
pub fn height_law_suite(samples: &[AlgebraicNumber]) -> Result<HeightLawReport, HeightError> {
    let mut rep = HeightLawReport::default();
    let heights: Vec<HeightValue> = samples.iter().map(weil_height).collect::<Result<_, _>>()?;
    let push = |rep: &mut HeightLawReport, law: &str, inputs: Vec<String>, lhs: f64, rhs: f64, tol: f64, eq: bool| {
        let passed = if eq { (lhs - rhs).abs() <= tol } else { lhs <= rhs + tol };
        rep.checks.push(LawCheck { law: law.into(), inputs, lhs, rhs, tolerance: tol, passed });
    };

    for (a, ha) in samples.iter().zip(&heights) {
        for k in -4i32..=4 {
            if k < 0 && a.is_zero() {
                continue;
            }
            let ak = power(a, k)?;
            if ak.degree() > MAX_DEGREE {
                rep.skipped.push(format!("{}^{k}: degree {}", name(a), ak.degree()));
                continue;
            }
            let hk = weil_height(&ak)?;
            let tol = 2.0 * (hk.error_bound + k.unsigned_abs() as f64 * ha.error_bound) + 1e-12;
            push(&mut rep, "power", vec![name(a), k.to_string()], hk.value, k.unsigned_abs() as f64 * ha.value, tol, true);
        }
        // Conjugate invariance: locating each root among the factors of f·(x − 2)
        // recovers the same number, hence the same height.
        let padded = a.minpoly.mul(&IntPoly::from_i64s(&[-2, 1]));
        for (i, rho) in a.conjugates().into_iter().enumerate() {
            let hc = weil_height(&AlgebraicNumber::trusted(factor_near(&padded, rho)))?;
            push(&mut rep, "conjugate", vec![name(a), i.to_string()], hc.value, ha.value, 2.0 * ha.error_bound, true);
        }
    }

    for (i, (a, ha)) in samples.iter().zip(&heights).enumerate() {
        for (b, hb) in samples.iter().zip(&heights).skip(i) {
            let d = a.degree() * b.degree();
            if d > MAX_DEGREE {
                rep.skipped.push(format!("{} ∘ {}: degree {d}", name(a), name(b)));
                continue;
            }
            let tol = ha.error_bound + hb.error_bound;
            let ab = product(a, b)?;
            let hab = weil_height(&ab)?;
            push(&mut rep, "product", vec![name(a), name(b)], hab.value, ha.value + hb.value, tol + hab.error_bound, false);
            let s = sum(a, b)?;
            let hs = weil_height(&s)?;
            push(
                &mut rep,
                "sum",
                vec![name(a), name(b)],
                hs.value,
                ha.value + hb.value + 2f64.ln(),
                tol + hs.error_bound,
                false,
            );
            if is_root_of_unity(b) && !a.is_zero() {
                push(&mut rep, "root-of-unity twist", vec![name(a), name(b)], hab.value, ha.value, tol + hab.error_bound, true);
            }
        }
    }
    Ok(rep)
}

/// Counts minimal polynomials of degree ≤ max_degree with coefficients in
/// [−bound, bound] whose height is below `height_cap`.
pub fn northcott_count(max_degree: usize, bound: i64, height_cap: f64) -> Result<usize, HeightError> {
    let mut count = 0;
    for d in 1..=max_degree {
        let mut coeffs = vec![-bound; d + 1];
        loop {
            if coeffs[d] > 0 {
                let f = IntPoly::from_i64s(&coeffs);
                if f.content().is_one() {
                    if let Ok(a) = AlgebraicNumber::new(f.coeffs().to_vec()) {
                        if weil_height(&a)?.value < height_cap {
                            count += 1;
                        }
                    }
                }
            }
            // Odometer over the coefficient box.
            let mut i = 0;
            loop {
                if i > d {
                    break;
                }
                if coeffs[i] < bound {
                    coeffs[i] += 1;
                    break;
                }
                coeffs[i] = -bound;
                i += 1;
            }
            if i > d {
                break;
            }
        }
    }
    Ok(count)
}
