//! Exact large-N GUE ratio law from the sine kernel.
//!
//! The density of three consecutive levels at `-t, y, t` is
//! `det(1 - K) det[R(x, z)]` over `x, z ∈ {-t, y, t}`, with `K` the sine
//! kernel restricted to `[-t, t]` and `R` the kernel of `(1 - K)^{-1} K`.
//! Both factors come from a Nyström discretization on a Clenshaw-Curtis
//! grid: the determinant directly, and `R` through the functions `Q`, `P`
//! solving `(1 - K) Q = sin(πx)/π` and `(1 - K) P = cos(πx)`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::quadrature::{clenshaw_curtis, gauss_legendre_on, QuadratureGrid};

/// Default Nyström order.
pub const DEFAULT_ORDER: usize = 60;
/// Linear solves with a larger condition estimate are refused.
pub const MAX_CONDITION: f64 = 1e12;
/// Points closer than this use the diagonal form of the resolvent.
const DIAGONAL_GAP: f64 = 1e-7;

/// `sin π(x - y) / π(x - y)`, equal to 1 on the diagonal.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    let u = PI * (x - y);
    if u.abs() < PI * 1e-6 {
        let u2 = u * u;
        1.0 - u2 / 6.0 + u2 * u2 / 120.0
    } else {
        u.sin() / u
    }
}

/// `∂K(x, y) / ∂x`.
fn sine_kernel_dx(x: f64, y: f64) -> f64 {
    let d = x - y;
    let u = PI * d;
    if u.abs() < 1e-3 {
        let u2 = u * u;
        // derivative of 1 - u²/6 + u⁴/120 - u⁶/5040 with respect to x
        PI * u * (-1.0 / 3.0 + u2 / 30.0 - u2 * u2 / 840.0)
    } else {
        (u * u.cos() - u.sin()) / (PI * d * d)
    }
}

/// `det(δ_jk - K(x_j, x_k) w_k)` on an `m`-point Clenshaw-Curtis grid
/// over `[-t, t]`.
pub fn fredholm_det(t: f64, m: usize) -> Result<f64> {
    let grid = clenshaw_curtis(t, m)?;
    let a = DMatrix::from_fn(m, m, |j, k| {
        let delta = if j == k { 1.0 } else { 0.0 };
        delta - sine_kernel(grid.nodes[j], grid.nodes[k]) * grid.weights[k]
    });
    Ok(a.lu().determinant())
}

/// Values of `Q`, `P` and their derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QpValues {
    pub x: f64,
    pub q: f64,
    pub p: f64,
    pub dq: f64,
    pub dp: f64,
}

/// Discretized sine-kernel operator on `[-t, t]` with `Q`, `P` at the nodes.
#[derive(Debug, Clone)]
pub struct NystromSolution {
    pub grid: QuadratureGrid,
    pub det_value: f64,
    /// Lower bound on the 2-norm condition number of the symmetrized system.
    pub condition: f64,
    pub q_nodes: Vec<f64>,
    pub p_nodes: Vec<f64>,
}

impl NystromSolution {
    /// Solves both integral equations on `m` Clenshaw-Curtis nodes.
    ///
    /// The system `(1 - K W) v = f` is solved in the symmetric form
    /// `(1 - W^½ K W^½) W^½ v = W^½ f`, whose matrix is positive definite
    /// while `det(1 - K) > 0`.
    pub fn solve(t: f64, m: usize) -> Result<Self> {
        let grid = clenshaw_curtis(t, m)?;
        let sw: Vec<f64> = grid.weights.iter().map(|w| w.sqrt()).collect();
        let b = DMatrix::from_fn(m, m, |j, k| {
            let delta = if j == k { 1.0 } else { 0.0 };
            delta - sw[j] * sine_kernel(grid.nodes[j], grid.nodes[k]) * sw[k]
        });
        let ill = |condition| Error::IllConditioned {
            half_width: t,
            condition,
        };
        let chol = b.clone().cholesky().ok_or_else(|| ill(f64::INFINITY))?;
        let det_value = chol.l_dirty().diagonal().iter().map(|d| d * d).product();
        let condition = condition_estimate(&b, &chol);
        if !(condition <= MAX_CONDITION) {
            return Err(ill(condition));
        }
        let solve = |f: &dyn Fn(f64) -> f64| -> Vec<f64> {
            let rhs = DVector::from_fn(m, |j, _| sw[j] * f(grid.nodes[j]));
            let z = chol.solve(&rhs);
            z.iter().zip(&sw).map(|(z, s)| z / s).collect()
        };
        let q_nodes = solve(&|x| (PI * x).sin() / PI);
        let p_nodes = solve(&|x| (PI * x).cos());
        Ok(Self {
            grid,
            det_value,
            condition,
            q_nodes,
            p_nodes,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.grid.half_width
    }

    /// Nyström interpolation of `Q`, `P` and their derivatives at `x`.
    pub fn eval(&self, x: f64) -> QpValues {
        let (s, c) = (PI * x).sin_cos();
        let mut v = QpValues {
            x,
            q: s / PI,
            p: c,
            dq: c,
            dp: -PI * s,
        };
        for (k, (&xk, &wk)) in self.grid.nodes.iter().zip(&self.grid.weights).enumerate() {
            let kv = wk * sine_kernel(x, xk);
            let kd = wk * sine_kernel_dx(x, xk);
            v.q += kv * self.q_nodes[k];
            v.p += kv * self.p_nodes[k];
            v.dq += kd * self.q_nodes[k];
            v.dp += kd * self.p_nodes[k];
        }
        v
    }

    pub fn q(&self, x: f64) -> f64 {
        self.eval(x).q
    }

    pub fn p(&self, x: f64) -> f64 {
        self.eval(x).p
    }

    /// `R(x, z)` for two evaluated points.
    pub fn resolvent_at(a: &QpValues, b: &QpValues) -> f64 {
        if (a.x - b.x).abs() < DIAGONAL_GAP {
            // average the two diagonal values so the result stays symmetric
            0.5 * ((a.dq * a.p - a.dp * a.q) + (b.dq * b.p - b.dp * b.q))
        } else {
            (a.q * b.p - b.q * a.p) / (a.x - b.x)
        }
    }

    pub fn resolvent(&self, x: f64, z: f64) -> f64 {
        Self::resolvent_at(&self.eval(x), &self.eval(z))
    }

    /// `det(1 - K) det[R]` at the points `-t, y, t`, unclipped.
    pub fn joint_density_raw(&self, y: f64) -> f64 {
        let t = self.half_width();
        let pts = [self.eval(-t), self.eval(y), self.eval(t)];
        let r = |i: usize, j: usize| Self::resolvent_at(&pts[i], &pts[j]);
        let m = [
            [r(0, 0), r(0, 1), r(0, 2)],
            [r(1, 0), r(1, 1), r(1, 2)],
            [r(2, 0), r(2, 1), r(2, 2)],
        ];
        let det3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        self.det_value * det3
    }
}

/// Inverse iteration on the Cholesky factor for the smallest eigenvalue;
/// the largest is bounded by the Gershgorin radius.
fn condition_estimate(b: &DMatrix<f64>, chol: &nalgebra::Cholesky<f64, nalgebra::Dyn>) -> f64 {
    let m = b.nrows();
    let mut v = DVector::from_element(m, 1.0 / (m as f64).sqrt());
    let mut inv_norm = 1.0;
    for _ in 0..12 {
        let w = chol.solve(&v);
        inv_norm = w.norm();
        if !(inv_norm.is_finite() && inv_norm > 0.0) {
            return f64::INFINITY;
        }
        v = w / inv_norm;
    }
    let max_row = b
        .row_iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    max_row * inv_norm
}

pub fn solve_qp(t: f64, m: usize) -> Result<NystromSolution> {
    NystromSolution::solve(t, m)
}

pub fn resolvent(sol: &NystromSolution, x: f64, z: f64) -> f64 {
    sol.resolvent(x, z)
}

/// Density of three consecutive levels at `-t, y, t`, for `-t < y < t`.
/// Returns the value and whether a tiny negative was clipped to zero.
pub fn joint_density(t: f64, y: f64, m: usize) -> Result<(f64, bool)> {
    if !(y > -t && y < t) {
        return Err(Error::InvalidArgument(format!(
            "y = {y} must lie strictly inside (-{t}, {t})"
        )));
    }
    let sol = solve_qp(t, m)?;
    clip(t, y, sol.joint_density_raw(y))
}

const CLIP_LIMIT: f64 = 1e-12;

fn clip(t: f64, y: f64, value: f64) -> Result<(f64, bool)> {
    if value >= 0.0 {
        Ok((value, false))
    } else if value >= -CLIP_LIMIT {
        Ok((0.0, true))
    } else {
        Err(Error::NegativeDensity {
            half_width: t,
            y,
            value,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactGueConfig {
    /// Largest interval half-width reached by the outer integral.
    pub t_max: f64,
    /// Gauss-Legendre points of the outer integral over the spacing.
    pub n_t: usize,
    /// Nyström order.
    pub order: usize,
}

impl Default for ExactGueConfig {
    fn default() -> Self {
        Self {
            t_max: 3.5,
            n_t: 80,
            order: DEFAULT_ORDER,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExactGueTable {
    pub r: Vec<f64>,
    pub density: Vec<f64>,
    /// `∫ u(r) dr` before normalization; 1 up to discretization error.
    pub raw_norm: f64,
    /// Joint-density evaluations clipped from tiny negatives to zero.
    pub clipped: usize,
}

/// Points of the internal rule on `[0, 1]` used for the normalization.
const NORM_POINTS: usize = 40;
/// Fraction of the outer interval treated as its tail.
const TAIL_SPAN: f64 = 0.05;
const TAIL_TOLERANCE: f64 = 1e-8;

/// Unnormalized `u(r) = ∫ p(-t, y, t) s ds` with `t = s(1 + r)/2`,
/// `y = s(r - 1)/2`. Returns `(u, clipped)`.
pub fn unnormalized_ratio_density(r: f64, config: &ExactGueConfig) -> Result<(f64, usize)> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "r must be positive, got {r}"
        )));
    }
    let s_max = 2.0 * config.t_max / (1.0 + r);
    let (nodes, weights) = gauss_legendre_on(config.n_t, 0.0, s_max);
    let mut total = 0.0;
    let mut tail = 0.0;
    let mut clipped = 0;
    for (&s, &w) in nodes.iter().zip(&weights) {
        let t = 0.5 * s * (1.0 + r);
        let y = 0.5 * s * (r - 1.0);
        let sol = solve_qp(t, config.order)?;
        let (p, c) = clip(t, y, sol.joint_density_raw(y))?;
        clipped += usize::from(c);
        let term = w * p * s;
        total += term;
        if s > (1.0 - TAIL_SPAN) * s_max {
            tail += term.abs();
        }
    }
    if total > 0.0 && tail > TAIL_TOLERANCE * total {
        return Err(Error::OuterQuadrature {
            r,
            tail: tail / total,
        });
    }
    Ok((total, clipped))
}

/// Exact large-N GUE ratio density on `r_grid`, normalized so that
/// `∫₀^∞ P(r) dr = 1`. The normalization integrates `u` over `[0, 1]` and
/// doubles it, since `u(1/r) = r² u(r)` maps `[1, ∞)` onto `[0, 1]`.
pub fn exact_ratio_pdf(r_grid: &[f64], config: &ExactGueConfig) -> Result<ExactGueTable> {
    if config.n_t == 0 || !(config.t_max > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "need t_max > 0 and n_t > 0, got {config:?}"
        )));
    }
    let (nr, wr) = gauss_legendre_on(NORM_POINTS, 0.0, 1.0);
    let eval = |rs: &[f64]| -> Result<Vec<(f64, usize)>> {
        rs.par_iter()
            .map(|&r| unnormalized_ratio_density(r, config))
            .collect()
    };
    let norm_values = eval(&nr)?;
    let raw_norm = 2.0
        * norm_values
            .iter()
            .zip(&wr)
            .map(|((u, _), w)| u * w)
            .sum::<f64>();
    let values = eval(r_grid)?;
    let clipped = values.iter().chain(&norm_values).map(|v| v.1).sum();
    Ok(ExactGueTable {
        r: r_grid.to_vec(),
        density: values.iter().map(|v| v.0 / raw_norm).collect(),
        raw_norm,
        clipped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_examples() {
        assert_eq!(sine_kernel(0.3, 0.3), 1.0);
        assert!((sine_kernel(0.0, 0.5) - 2.0 / PI).abs() < 1e-15);
        assert!(sine_kernel(0.0, 1.0).abs() < 1e-15);
        // series and closed form meet smoothly
        let a = sine_kernel(0.0, 0.999e-6);
        let b = sine_kernel(0.0, 1.001e-6);
        assert!((a - b).abs() < 1e-12);
        for &d in &[1e-4, 0.9e-3, 1.1e-3, 0.3] {
            let h = 1e-6;
            let fd = (sine_kernel(d + h, 0.0) - sine_kernel(d - h, 0.0)) / (2.0 * h);
            assert!((sine_kernel_dx(d, 0.0) - fd).abs() < 1e-8, "d={d}");
        }
    }

    #[test]
    fn determinant_small_t_and_convergence() {
        let d = fredholm_det(0.01, 60).unwrap();
        assert!((d - 0.98).abs() < 1e-4);
        let a = fredholm_det(1.0, 40).unwrap();
        let b = fredholm_det(1.0, 60).unwrap();
        assert!((a - b).abs() < 1e-10);
        let mut prev = 1.0;
        for i in 1..=20 {
            let d = fredholm_det(0.1 * i as f64, 60).unwrap();
            assert!(d < prev && d > 0.0);
            prev = d;
        }
    }

    #[test]
    fn cholesky_determinant_matches_lu() {
        for &t in &[0.2, 1.0, 2.5] {
            let sol = solve_qp(t, 60).unwrap();
            let d = fredholm_det(t, 60).unwrap();
            assert!((sol.det_value - d).abs() < 1e-13, "t={t}");
        }
    }

    #[test]
    fn small_t_limits() {
        let t = 1e-3;
        let sol = solve_qp(t, 60).unwrap();
        for (k, &x) in sol.grid.nodes.iter().enumerate() {
            assert!((sol.q_nodes[k] - (PI * x).sin() / PI).abs() < 1e-5);
            // P picks up ∫K·1 ≈ 2t at first order, so compare with that term
            assert!((sol.p_nodes[k] - (PI * x).cos() - 2.0 * t).abs() < 1e-5);
        }
        let pts: Vec<f64> = (0..5).map(|i| -t + 0.5 * t * i as f64).collect();
        for &x in &pts {
            for &z in &pts {
                // R = K + K² + ..., and K²(x, z) ≈ 2t on a short interval
                let r = sol.resolvent(x, z);
                assert!((r - sine_kernel(x, z)).abs() < 2.1 * t);
                assert!((r - sine_kernel(x, z) - 2.0 * t).abs() < 1e-5);
            }
        }
    }

    #[test]
    fn parity_and_residual() {
        let sol = solve_qp(1.0, 60).unwrap();
        let n = sol.grid.nodes.len();
        for k in 0..n {
            assert!((sol.q_nodes[k] + sol.q_nodes[n - 1 - k]).abs() < 1e-10);
            assert!((sol.p_nodes[k] - sol.p_nodes[n - 1 - k]).abs() < 1e-10);
        }
        for i in 0..50 {
            let x = -0.99 + 1.98 * i as f64 / 49.0 + 0.003;
            let v = sol.eval(x);
            let kq = sol
                .grid
                .nodes
                .iter()
                .zip(&sol.grid.weights)
                .map(|(&y, &w)| w * sine_kernel(x, y) * sol.q(y))
                .sum::<f64>();
            let kp = sol
                .grid
                .nodes
                .iter()
                .zip(&sol.grid.weights)
                .map(|(&y, &w)| w * sine_kernel(x, y) * sol.p(y))
                .sum::<f64>();
            assert!((v.q - kq - (PI * x).sin() / PI).abs() < 1e-10);
            assert!((v.p - kp - (PI * x).cos()).abs() < 1e-10);
        }
    }

    #[test]
    fn resolvent_symmetry_and_diagonal() {
        let sol = solve_qp(1.3, 60).unwrap();
        let xs = [-1.3, -0.7, 0.1, 0.9, 1.3];
        for &x in &xs {
            for &z in &xs {
                assert!((sol.resolvent(x, z) - sol.resolvent(z, x)).abs() < 1e-12);
            }
            let h = 1e-5;
            let fd = 0.5 * (sol.resolvent(x, x + h) + sol.resolvent(x, x - h));
            assert!((sol.resolvent(x, x) - fd).abs() < 1e-6, "x={x}");
        }
    }

    #[test]
    fn joint_density_properties() {
        let t = 1.2;
        for &y in &[0.1, 0.5, 1.0] {
            let (a, _) = joint_density(t, y, 60).unwrap();
            let (b, _) = joint_density(t, -y, 60).unwrap();
            assert!((a - b).abs() < 1e-10);
        }
        let (mid, _) = joint_density(t, 0.0, 60).unwrap();
        let (edge, _) = joint_density(t, t - 1e-4, 60).unwrap();
        assert!(mid > 0.0 && edge < 1e-4 * mid, "mid={mid} edge={edge}");
        let (tiny, _) = joint_density(1e-2, 0.0, 60).unwrap();
        assert!(tiny.is_finite() && tiny > 0.0);
        assert!(joint_density(t, t, 60).is_err());
    }

    #[test]
    fn ill_conditioning_is_reported() {
        assert!(matches!(
            solve_qp(9.0, 60),
            Err(Error::IllConditioned { .. })
        ));
    }
}
