//! Quadrature rules: Clenshaw-Curtis and Gauss-Legendre node sets, and an
//! adaptive Gauss-Kronrod integrator for the closed-form laws.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Nodes and positive weights on a symmetric interval `[-t, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub half_width: f64,
    /// Ascending, symmetric about zero.
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureGrid {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Clenshaw-Curtis rule with `m` Chebyshev extreme points mapped to `[-t, t]`.
/// Exact for polynomials of degree `m - 1`; both endpoints are nodes.
pub fn clenshaw_curtis(t: f64, m: usize) -> Result<QuadratureGrid> {
    if !(t > 0.0) || m < 2 {
        return Err(Error::InvalidArgument(format!(
            "clenshaw_curtis needs t > 0 and m >= 2 (t={t}, m={m})"
        )));
    }
    let n = m - 1;
    let nf = n as f64;
    let theta = |k: usize| k as f64 * PI / nf;
    let mut weights = vec![0.0; m];
    let end_weight = if n % 2 == 0 {
        1.0 / (nf * nf - 1.0)
    } else {
        1.0 / (nf * nf)
    };
    weights[0] = end_weight;
    weights[n] = end_weight;
    for (k, w) in weights.iter_mut().enumerate().take(n).skip(1) {
        let th = theta(k);
        let mut v = 1.0;
        for j in 1..=(n - 1) / 2 {
            let jf = j as f64;
            v -= 2.0 * (2.0 * jf * th).cos() / (4.0 * jf * jf - 1.0);
        }
        if n % 2 == 0 {
            v -= (nf * th).cos() / (nf * nf - 1.0);
        }
        *w = 2.0 * v / nf;
    }
    // cos(k pi / n) runs from +1 to -1; flip to ascending and symmetrize
    // exactly so that odd integrands vanish to rounding.
    let mut nodes: Vec<f64> = (0..m).map(|k| -theta(k).cos()).collect();
    for k in 0..m / 2 {
        let x = 0.5 * (nodes[m - 1 - k] - nodes[k]);
        nodes[k] = -x;
        nodes[m - 1 - k] = x;
        let w = 0.5 * (weights[k] + weights[m - 1 - k]);
        weights[k] = w;
        weights[m - 1 - k] = w;
    }
    if m % 2 == 1 {
        nodes[m / 2] = 0.0;
    }
    Ok(QuadratureGrid {
        half_width: t,
        nodes: nodes.into_iter().map(|x| x * t).collect(),
        weights: weights.into_iter().map(|w| w * t).collect(),
    })
}

/// `n`-point Gauss-Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Gauss-Legendre rule mapped to `[a, b]`.
pub fn gauss_legendre_on(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(n);
    let (c, h) = (0.5 * (a + b), 0.5 * (b - a));
    (
        x.into_iter().map(|x| c + h * x).collect(),
        w.into_iter().map(|w| h * w).collect(),
    )
}

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_225,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn kronrod15(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

const MAX_SEGMENTS: usize = 4000;

/// Globally adaptive 7/15 Gauss-Kronrod integration on `[a, b]`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, abs_tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (value, error) = kronrod15(&f, a, b);
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value, error });
    let mut total_err = error;
    while total_err > abs_tol {
        if heap.len() >= MAX_SEGMENTS || !total_err.is_finite() {
            return Err(Error::Quadrature {
                achieved: total_err,
                tolerance: abs_tol,
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        let (v1, e1) = kronrod15(&f, worst.a, mid);
        let (v2, e2) = kronrod15(&f, mid, worst.b);
        total_err += e1 + e2 - worst.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            value: v1,
            error: e1,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            value: v2,
            error: e2,
        });
        // re-sum occasionally so cancellation in the running total cannot
        // hide the true error
        if heap.len() % 64 == 0 {
            total_err = heap.iter().map(|s| s.error).sum();
        }
    }
    Ok(heap.iter().map(|s| s.value).sum())
}

/// `∫_a^∞ f` through the map `x = a + u / (1 - u)`.
pub fn integrate_to_infinity(f: impl Fn(f64) -> f64, a: f64, abs_tol: f64) -> Result<f64> {
    integrate(
        |u| {
            let v = 1.0 - u;
            if v <= 0.0 {
                return 0.0;
            }
            f(a + u / v) / (v * v)
        },
        0.0,
        1.0,
        abs_tol,
    )
}
