//! Brute-force references that share no code with the library.

use std::collections::BTreeSet;
use std::f64::consts::PI;

use nalgebra::DMatrix;

/// Eigenvalues of a real symmetric 3×3 matrix from the trigonometric
/// solution of its characteristic cubic, ascending.
pub fn cubic_eigenvalues(a: [[f64; 3]; 3]) -> [f64; 3] {
    let p1 = a[0][1].powi(2) + a[0][2].powi(2) + a[1][2].powi(2);
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * p1;
    let p = (p2 / 6.0).sqrt();
    let mut b = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = (a[i][j] - if i == j { q } else { 0.0 }) / p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let phi = (det / 2.0).clamp(-1.0, 1.0).acos() / 3.0;
    let hi = q + 2.0 * p * phi.cos();
    let lo = q + 2.0 * p * (phi + 2.0 * PI / 3.0).cos();
    [lo, 3.0 * q - hi - lo, hi]
}

/// Translation orbits of `L`-bit strings found by explicit set
/// enumeration: (smallest member, orbit size).
pub fn brute_orbits(length: usize) -> Vec<(u64, usize)> {
    let mask = (1u64 << length) - 1;
    let rotate = |s: u64| ((s << 1) | (s >> (length - 1))) & mask;
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for s in 0..=mask {
        if seen.contains(&s) {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut x = s;
        while members.insert(x) {
            x = rotate(x);
        }
        orbits.push((*members.iter().next().unwrap(), members.len()));
        seen.extend(members);
    }
    orbits
}

/// Full `2^L` spectrum of Σ −XₙXₙ₊₁ + λZₙ + αXₙ (periodic), ascending.
pub fn dense_ising_spectrum(length: usize, lambda: f64, alpha: f64) -> Vec<f64> {
    let dim = 1usize << length;
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for s in 0..dim {
        for n in 0..length {
            let up = (s >> n) & 1 == 0;
            h[(s, s)] += if up { lambda } else { -lambda };
            h[(s ^ (1 << n), s)] += alpha;
            let m = (n + 1) % length;
            h[(s ^ (1 << n) ^ (1 << m), s)] -= 1.0;
        }
    }
    let mut e: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    e.sort_by(f64::total_cmp);
    e
}

fn sinc_kernel(x: f64, y: f64) -> f64 {
    let d = PI * (x - y);
    if d == 0.0 {
        1.0
    } else {
        d.sin() / d
    }
}

/// Gauss–Legendre nodes and weights on [−t, t] by Newton iteration on P_n.
pub fn legendre_rule(n: usize, t: f64) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = t * z;
        w[i] = t * 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// det(1 − K) on [−t, t] from the trace expansion
/// exp(−Σₙ tr(Kⁿ)/n), with traces taken on a Gauss–Legendre rule.
pub fn fredholm_by_traces(t: f64, terms: usize) -> f64 {
    let (x, w) = legendre_rule(40, t);
    let n = x.len();
    let k = DMatrix::from_fn(n, n, |i, j| {
        w[i].sqrt() * sinc_kernel(x[i], x[j]) * w[j].sqrt()
    });
    let mut power = k.clone();
    let mut log_det = 0.0;
    for m in 1..=terms {
        log_det -= power.trace() / m as f64;
        power = &power * &k;
    }
    log_det.exp()
}

/// Resolvent R = (1 − KW)⁻¹K on the given nodes, by a dense solve.
pub fn direct_resolvent(nodes: &[f64], weights: &[f64]) -> DMatrix<f64> {
    let n = nodes.len();
    let k = DMatrix::from_fn(n, n, |i, j| sinc_kernel(nodes[i], nodes[j]));
    let a = DMatrix::from_fn(n, n, |i, j| {
        (if i == j { 1.0 } else { 0.0 }) - sinc_kernel(nodes[i], nodes[j]) * weights[j]
    });
    a.lu().solve(&k).expect("nonsingular")
}
