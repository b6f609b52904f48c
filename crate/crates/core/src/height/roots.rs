//! Simultaneous complex root finding (Aberth–Ehrlich) with inclusion radii.

use num_complex::Complex64;

const MAX_ITER: usize = 800;

/// A root approximation and a radius of a disk that provably contains a root
/// (up to the floating-point evaluation bound folded into it).
#[derive(Clone, Copy, Debug)]
pub struct RootDisk {
    pub center: Complex64,
    pub radius: f64,
}

#[derive(Clone, Debug)]
pub struct Roots {
    pub disks: Vec<RootDisk>,
    pub converged: bool,
    pub iterations: usize,
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

/// Upper bound on the rounding error of evaluating the polynomial at z.
fn eval_error(c: &[f64], z: Complex64) -> f64 {
    let n = c.len() as f64;
    let u = f64::EPSILON / 2.0;
    let gamma = 4.0 * n * u / (1.0 - 4.0 * n * u);
    let r = z.norm();
    let mut s = 0.0;
    for &a in c.iter().rev() {
        s = s * r + a.abs();
    }
    (gamma + u) * s
}

/// Fujiwara's bound on root moduli.
fn root_bound(c: &[f64]) -> f64 {
    let n = c.len() - 1;
    let lead = c[n].abs();
    let mut b: f64 = 0.0;
    for k in 1..=n {
        let t = (c[n - k].abs() / lead).powf(1.0 / k as f64);
        b = b.max(if k == n { t / 2f64.powf(1.0 / n as f64) } else { t });
    }
    2.0 * b
}

/// All complex roots of a polynomial given lowest degree first.
pub fn find_roots(c: &[f64]) -> Roots {
    let n = c.len().saturating_sub(1);
    if n == 0 {
        return Roots { disks: Vec::new(), converged: true, iterations: 0 };
    }
    let bound = root_bound(c).max(1e-300);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4))
        .collect();
    let mut done = vec![false; n];
    let mut iterations = 0;
    while iterations < MAX_ITER && done.iter().any(|d| !d) {
        iterations += 1;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm() <= eval_error(c, z[i]) {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            }
        }
    }
    let converged = done.iter().all(|&d| d);
    Roots { disks: inclusion_disks(c, &z), converged, iterations }
}

/// Disks of radius n·|W_i| around each approximation, W_i the Weierstrass
/// correction; their union holds every root and an isolated disk holds exactly
/// one. Overlapping disks are widened to cover their whole cluster.
fn inclusion_disks(c: &[f64], z: &[Complex64]) -> Vec<RootDisk> {
    let n = z.len();
    let lead = c[n];
    let mut r: Vec<f64> = (0..n)
        .map(|i| {
            let (p, _) = horner(c, z[i]);
            let den: Complex64 = (0..n).filter(|&j| j != i).map(|j| z[i] - z[j]).product::<Complex64>() * lead;
            let num = p.norm() + eval_error(c, z[i]);
            n as f64 * num / den.norm() * (1.0 + 8.0 * f64::EPSILON * n as f64)
        })
        .collect();
    // Clusters: union-find over overlapping disks.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (z[i] - z[j]).norm() <= r[i] + r[j] {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let comp: Vec<usize> = (0..n).map(|i| find(&mut parent, i)).collect();
    let mut span = vec![0.0f64; n];
    let mut members = vec![0usize; n];
    for i in 0..n {
        span[comp[i]] += 2.0 * r[i];
        members[comp[i]] += 1;
    }
    for i in 0..n {
        if members[comp[i]] > 1 {
            r[i] = span[comp[i]];
        }
    }
    z.iter().zip(r).map(|(&center, radius)| RootDisk { center, radius }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_roots_of_two() {
        let roots = find_roots(&[-2.0, 0.0, 0.0, 1.0]);
        assert!(roots.converged);
        for d in &roots.disks {
            assert!((d.center.norm() - 2f64.powf(1.0 / 3.0)).abs() < 1e-14);
            assert!(d.radius < 1e-12);
        }
    }

    #[test]
    fn wilkinson_like() {
        // (x−1)(x−2)…(x−8)
        let mut c = vec![1.0];
        for k in 1..=8 {
            let mut next = vec![0.0; c.len() + 1];
            for (i, a) in c.iter().enumerate() {
                next[i + 1] += a;
                next[i] -= k as f64 * a;
            }
            c = next;
        }
        let roots = find_roots(&c);
        assert!(roots.converged);
        let mut re: Vec<f64> = roots.disks.iter().map(|d| d.center.re).collect();
        re.sort_by(f64::total_cmp);
        for (k, r) in re.iter().enumerate() {
            assert!((r - (k + 1) as f64).abs() < 1e-9);
        }
        for d in &roots.disks {
            let k = d.center.re.round();
            assert!((d.center - Complex64::new(k, 0.0)).norm() <= d.radius.max(1e-9));
        }
    }
}
