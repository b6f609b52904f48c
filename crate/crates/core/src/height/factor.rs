//! Factorization over ℤ: Cantor–Zassenhaus mod p, Hensel lifting, and
//! recombination of the lifted factors.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exact::{fp_poly as fp, is_prime};

use super::zpoly::IntPoly;

/// Primes tried when looking for a good reduction; the one with the fewest
/// modular factors wins.
const CANDIDATE_PRIMES: usize = 6;

fn reduce_poly(f: &IntPoly, p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut out: Vec<u64> = f.coeffs().iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect();
    fp::trim(&mut out);
    out
}

/// Extended gcd in 𝔽_p[x]: returns (g, s, t) with s·a + t·b = g, g monic.
fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = fp::divrem(&r0, &r1, p);
        let s2 = fp::sub(&s0, &fp::mul(&q, &s1, p), p);
        let t2 = fp::sub(&t0, &fp::mul(&q, &t1, p), p);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let inv = fp::invmod(*r0.last().unwrap(), p);
    (fp::scale(&r0, inv, p), fp::scale(&s0, inv, p), fp::scale(&t0, inv, p))
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial over 𝔽_p, p odd. Factors come back monic.
pub fn factor_mod_p(f: &[u64], p: u64, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut rest = fp::monic(f, p);
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 1;
    while fp::degree(&rest).unwrap_or(0) >= 2 * d {
        h = fp::powrem(&h, p, &rest, p);
        let g = fp::gcd(&fp::sub(&h, &x, p), &rest, p);
        if fp::degree(&g).unwrap_or(0) > 0 {
            equal_degree(&g, d, p, rng, &mut out);
            rest = fp::divrem(&rest, &g, p).0;
            h = fp::rem(&h, &rest, p);
        }
        d += 1;
    }
    if fp::degree(&rest).unwrap_or(0) > 0 {
        out.push(fp::monic(&rest, p));
    }
    out
}

fn equal_degree(g: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = fp::degree(g).unwrap();
    if n == d {
        out.push(fp::monic(g, p));
        return;
    }
    let e: BigUint = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        fp::trim(&mut a);
        if fp::degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = fp::powrem_big(&a, &e, g, p);
        let split = fp::gcd(&fp::sub(&b, &[1], p), g, p);
        let k = fp::degree(&split).unwrap_or(0);
        if k > 0 && k < n {
            let other = fp::divrem(g, &split, p).0;
            equal_degree(&split, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

fn to_big(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn mod_vec(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

fn mul_big(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    mod_vec(&c, m)
}

/// Lifts f ≡ g·h (mod p), g monic, to the same identity mod p^k.
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, s, t) = xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let bp = BigInt::from(p);
    let mut g_big = to_big(g);
    let mut h_big = to_big(h);
    let mut pk = bp.clone();
    for _ in 1..k {
        let next = &pk * &bp;
        let gh = mul_big(&g_big, &h_big, &next);
        let mut e_big: Vec<BigInt> = (0..f.len().max(gh.len()))
            .map(|i| f.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
            .collect();
        e_big = mod_vec(&e_big, &next);
        let e: Vec<u64> = {
            let mut v: Vec<u64> = e_big.iter().map(|c| (c / &pk).mod_floor(&bp).to_u64().unwrap()).collect();
            fp::trim(&mut v);
            v
        };
        if !e.is_empty() {
            let te = fp::mul(&t, &e, p);
            let (q, dg) = fp::divrem(&te, g, p);
            let dh = fp::add(&fp::mul(&s, &e, p), &fp::mul(&q, h, p), p);
            let add = |base: &mut Vec<BigInt>, d: &[u64]| {
                if base.len() < d.len() {
                    base.resize(d.len(), BigInt::zero());
                }
                for (i, &c) in d.iter().enumerate() {
                    base[i] += &pk * BigInt::from(c);
                }
            };
            add(&mut g_big, &dg);
            add(&mut h_big, &dh);
        }
        pk = next;
    }
    (mod_vec(&g_big, &pk), mod_vec(&h_big, &pk))
}

fn symmetric(a: &[BigInt], m: &BigInt) -> IntPoly {
    let half: BigInt = m >> 1;
    IntPoly::new(a.iter().map(|c| if c > &half { c - m } else { c.clone() }).collect())
}

/// Irreducible factors of a primitive squarefree polynomial of degree ≥ 1,
/// each primitive with positive leading coefficient.
pub fn factor_squarefree(f: &IntPoly) -> Vec<IntPoly> {
    let f = f.primitive();
    let n = f.degree().unwrap_or(0);
    if n <= 1 {
        return vec![f];
    }
    let lc = f.lead().unwrap().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    // Pick the prime with the fewest modular factors among a few good ones.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    let mut p = 3u64;
    while tried < CANDIDATE_PRIMES {
        p += 2;
        if !is_prime(p) || (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp_ = reduce_poly(&f, p);
        if fp::degree(&fp::gcd(&fp_, &fp::derivative(&fp_, p), p)).unwrap_or(0) > 0 {
            continue;
        }
        tried += 1;
        let facs = factor_mod_p(&fp_, p, &mut rng);
        if facs.len() == 1 {
            return vec![f];
        }
        if best.as_ref().map_or(true, |(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, modular) = best.unwrap();

    // Mignotte-style bound on coefficients of lc·g for any factor g.
    let bound = (BigInt::one() << n) * f.norm2_ceil() * lc.abs();
    let mut k = 1u32;
    let mut m = BigInt::from(p);
    while m <= &bound * 2 {
        m *= p;
        k += 1;
    }

    // Lift the modular factors one at a time off the remaining cofactor.
    let mut lifted: Vec<Vec<BigInt>> = Vec::new();
    let mut cof_target: Vec<BigInt> = f.coeffs().to_vec();
    let mut cof_mod: Vec<u64> = reduce_poly(&f, p);
    for g in &modular[..modular.len() - 1] {
        let h = fp::divrem(&cof_mod, g, p).0;
        let (g_l, h_l) = hensel_pair(&cof_target, g, &h, p, k);
        lifted.push(g_l);
        cof_target = h_l;
        cof_mod = h;
    }
    // The last cofactor is lc·g_r; make it monic mod p^k.
    let lc_m = lc.mod_floor(&m);
    let lc_inv_m = lc_m.modinv(&m).expect("leading coefficient is a unit mod p");
    lifted.push(mod_vec(&cof_target.iter().map(|c| c * &lc_inv_m).collect::<Vec<_>>(), &m));

    recombine(f, lifted, &m)
}

/// Tries subsets of lifted factors in increasing size; a subset whose scaled
/// product divides f over ℤ is a true factor.
fn recombine(mut f: IntPoly, mut lifted: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<IntPoly> {
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in combinations(lifted.len(), size) {
            let lc = f.lead().unwrap().clone();
            let mut prod = vec![lc.mod_floor(m)];
            for &i in &subset {
                prod = mul_big(&prod, &lifted[i], m);
            }
            let cand = symmetric(&prod, m).primitive();
            if let Some(q) = f.div_exact(&cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                f = q.primitive();
                lifted = lifted.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, g)| g).collect();
            }
            None => size += 1,
        }
    }
    if f.degree().unwrap_or(0) > 0 {
        found.push(f);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Full factorization into irreducibles over ℤ, with multiplicities; the
/// content and sign are dropped.
pub fn factor(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    let mut out: Vec<(IntPoly, usize)> = Vec::new();
    let mut rest = f.primitive();
    // Peel off the squarefree part repeatedly; layer j holds the factors of
    // multiplicity ≥ j.
    while rest.degree().unwrap_or(0) > 0 {
        let sf = rest.squarefree();
        for g in factor_squarefree(&sf) {
            match out.iter_mut().find(|(h, _)| *h == g) {
                Some((_, m)) => *m += 1,
                None => out.push((g, 1)),
            }
        }
        rest = rest.div_exact(&sf).expect("squarefree part divides").primitive();
    }
    out
}

/// A rational root a/b of f, if any, by trying divisors of the end coefficients.
/// Only attempted when both are below 10^6.
pub fn rational_root(f: &IntPoly) -> Option<(BigInt, BigInt)> {
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let lead = f.lead()?.clone();
    let small = |x: &BigInt| x.abs() < BigInt::from(1_000_000);
    if !small(&a0) || !small(&lead) {
        return None;
    }
    let divisors = |x: &BigInt| -> Vec<i64> {
        let x = x.abs().to_i64().unwrap();
        (1..=x).filter(|d| x % d == 0).collect()
    };
    for num in divisors(&a0) {
        for den in divisors(&lead) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [1, -1] {
                let r = num_rational::BigRational::new(BigInt::from(sign * num), BigInt::from(den));
                if f.eval_rational(&r).is_zero() {
                    return Some((r.numer().clone(), r.denom().clone()));
                }
            }
        }
    }
    None
}
