//! Dense polynomials over 𝔽_p as coefficient vectors, lowest degree first.
//!
//! Canonical form has no trailing zeros; the zero polynomial is empty.

#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue via Fermat.
pub fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    powmod(a, p - 2, p)
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out: Vec<u64> = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().map(|&x| mulmod(x, c, p)).collect();
    trim(&mut out);
    out
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u128 * y as u128) % pp;
        }
    }
    let mut out: Vec<u64> = acc.into_iter().map(|c| c as u64).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = degree(b).expect("division by the zero polynomial");
    let inv_lead = invmod(b[db], p);
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = mulmod(r[k], inv_lead, p);
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let idx = k - db + j;
            r[idx] = (r[idx] + p - mulmod(c, bj, p)) % p;
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    divrem(a, b, p).1
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => scale(a, invmod(a[d], p), p),
    }
}

/// Monic gcd.
pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    monic(&x, p)
}

pub fn mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `base^exp mod m` for an arbitrary-size exponent given as little-endian u64 limbs.
pub fn powrem_big(base: &[u64], exp: &num_bigint::BigUint, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let b = rem(base, m, p);
    for bit in (0..exp.bits()).rev() {
        acc = mulrem(&acc, &acc, m, p);
        if exp.bit(bit) {
            acc = mulrem(&acc, &b, m, p);
        }
    }
    acc
}

pub fn powrem(base: &[u64], exp: u64, m: &[u64], p: u64) -> Vec<u64> {
    powrem_big(base, &num_bigint::BigUint::from(exp), m, p)
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mulmod(c, i as u64 % p, p))
        .collect();
    trim(&mut out);
    out
}

/// Rabin's test for a monic polynomial of degree ≥ 1.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let n = match degree(m) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    let x = vec![0, 1];
    // x^{p^k} mod m by repeated p-th powering.
    let frob = |k: usize| {
        let mut t = x.clone();
        for _ in 0..k {
            t = powrem(&t, p, m, p);
        }
        t
    };
    let x_mod = rem(&x, m, p);
    if !sub(&frob(n), &x_mod, p).is_empty() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let t = frob(n / r as usize);
        let g = gcd(m, &sub(&t, &x, p), p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_roundtrip() {
        let p = 7;
        let a = vec![3, 1, 4, 1, 5, 2];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&a, &b, p);
        assert_eq!(add(&mul(&q, &b, p), &r, p), a);
        assert!(r.len() < 3);
    }

    #[test]
    fn rabin_small() {
        // x² + 2 is irreducible mod 5, x² + 1 = (x+2)(x+3) is not.
        assert!(is_irreducible(&[2, 0, 1], 5));
        assert!(!is_irreducible(&[1, 0, 1], 5));
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(!is_irreducible(&[1, 0, 0, 1], 2));
    }
}
