//! Dense Hermitian eigenvalues: Householder reduction to a real symmetric
//! tridiagonal matrix, then implicit QL with Wilkinson-type shifts.

use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Field of matrix entries: `f64` for real symmetric, `Complex64` for Hermitian.
pub trait Scalar:
    Copy
    + Send
    + Sync
    + PartialEq
    + std::fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + 'static
{
    const ZERO: Self;
    fn conj(self) -> Self;
    fn abs2(self) -> f64;
    fn re(self) -> f64;
    fn from_re(x: f64) -> Self;
    fn scale(self, x: f64) -> Self;
    fn to_complex(self) -> Complex64;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn abs2(self) -> f64 {
        self * self
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn from_re(x: f64) -> Self {
        x
    }
    #[inline]
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn abs2(self) -> f64 {
        self.norm_sqr()
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn from_re(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn scale(self, x: f64) -> Self {
        self * x
    }
    fn to_complex(self) -> Complex64 {
        self
    }
}

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::ZERO; n * n],
        }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] += v;
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i).re()).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x.abs2()).sum::<f64>().sqrt()
    }

    /// `max |A - A^H|` over all entries.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).abs2().sqrt());
            }
        }
        worst
    }

    /// Copies the upper triangle onto the lower one and drops the imaginary
    /// part of the diagonal, so the result is exactly Hermitian.
    pub fn hermitize_from_upper(&mut self) {
        for i in 0..self.n {
            let d = self.get(i, i).re();
            self.set(i, i, T::from_re(d));
            for j in i + 1..self.n {
                let v = self.get(i, j).conj();
                self.set(j, i, v);
            }
        }
    }

    pub fn to_nalgebra(&self) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j).to_complex())
    }
}

/// Symmetric tridiagonal matrix: `diag[i]`, and `off[i]` coupling `i, i+1`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

/// Householder reduction of a Hermitian matrix (only its values are read;
/// the input is consumed as workspace).
pub fn tridiagonalize<T: Scalar>(mut a: DenseMatrix<T>) -> SymTridiagonal {
    let n = a.n;
    let mut off = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![T::ZERO; n];
    let mut p = vec![T::ZERO; n];
    for k in 0..n.saturating_sub(1) {
        let m = n - k - 1;
        // column k below the diagonal, read through the row by hermiticity
        let row = (k * n + k + 1)..((k + 1) * n);
        let x: Vec<T> = a.data[row].iter().map(|z| z.conj()).collect();
        let alpha2: f64 = x.iter().map(|z| z.abs2()).sum();
        let alpha = alpha2.sqrt();
        off.push(alpha);
        let tail2 = alpha2 - x[0].abs2();
        if tail2 <= f64::MIN_POSITIVE * alpha2.max(f64::MIN_POSITIVE) {
            // already reduced; a diagonal phase makes the entry real
            continue;
        }
        let x0 = x[0].abs2().sqrt();
        let phase = if x0 == 0.0 {
            T::from_re(1.0)
        } else {
            x[0].scale(1.0 / x0)
        };
        let v = &mut v[..m];
        v.copy_from_slice(&x);
        v[0] += phase.scale(alpha);
        let tau = 2.0 / (2.0 * alpha2 + 2.0 * alpha * x0);
        // p = tau * B v on the trailing block
        let p = &mut p[..m];
        let base = k + 1;
        for i in 0..m {
            let rowi = &a.data[(base + i) * n + base..(base + i) * n + n];
            let mut s = T::ZERO;
            for (bij, &vj) in rowi.iter().zip(v.iter()) {
                s += *bij * vj;
            }
            p[i] = s.scale(tau);
        }
        // w = p - (tau/2)(v^H p) v
        let mut vhp = T::ZERO;
        for i in 0..m {
            vhp += v[i].conj() * p[i];
        }
        let kk = vhp.scale(0.5 * tau);
        for i in 0..m {
            p[i] -= kk * v[i];
        }
        // B -= v w^H + w v^H
        for i in 0..m {
            let (vi, wi) = (v[i], p[i]);
            let rowi = &mut a.data[(base + i) * n + base..(base + i) * n + n];
            for (j, bij) in rowi.iter_mut().enumerate() {
                *bij -= vi * p[j].conj() + wi * v[j].conj();
            }
        }
    }
    let diag = (0..n).map(|i| a.get(i, i).re()).collect();
    SymTridiagonal { diag, off }
}

/// `sqrt(a² + b²)`, falling back to `hypot` only when squaring would
/// overflow or underflow.
#[inline]
fn norm2(a: f64, b: f64) -> f64 {
    let s = a * a + b * b;
    if s.is_finite() && s > f64::MIN_POSITIVE * 1e4 {
        s.sqrt()
    } else {
        a.hypot(b)
    }
}

/// All eigenvalues of a symmetric tridiagonal matrix, ascending.
///
/// Fails when the total number of implicit QL sweeps exceeds `50 n`.
pub fn tridiagonal_eigenvalues(t: &SymTridiagonal) -> Result<Vec<f64>> {
    let n = t.diag.len();
    let mut d = t.diag.clone();
    let mut e = t.off.clone();
    e.resize(n, 0.0);
    let cap = 50 * n.max(1);
    let mut sweeps = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > cap {
                return Err(Error::NoConvergence {
                    index: l,
                    iterations: sweeps - 1,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = norm2(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = norm2(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(f64::total_cmp);
    Ok(d)
}

/// Eigenvalues of a dense Hermitian matrix, ascending.
pub fn eigenvalues<T: Scalar>(a: DenseMatrix<T>) -> Result<Vec<f64>> {
    tridiagonal_eigenvalues(&tridiagonalize(a))
}

/// `‖A v - λ v‖ / ‖A‖_F` for each `λ`, with `v` from inverse iteration on
/// the dense matrix. Cubic per eigenvalue; meant for validation.
pub fn backward_errors<T: Scalar>(a: &DenseMatrix<T>, eigenvalues: &[f64]) -> Vec<f64> {
    let m = a.to_nalgebra();
    let n = a.dim();
    let norm = a.frobenius_norm().max(f64::MIN_POSITIVE);
    eigenvalues
        .iter()
        .map(|&lambda| {
            let shift = lambda + norm * 1e-12;
            let shifted = &m - DMatrix::<Complex64>::identity(n, n) * Complex64::new(shift, 0.0);
            let lu = shifted.lu();
            let mut x = nalgebra::DVector::from_fn(n, |i, _| {
                Complex64::new(1.0 + 0.1 * i as f64, 0.3 - 0.01 * i as f64)
            });
            for _ in 0..3 {
                match lu.solve(&x) {
                    Some(y) => {
                        let ny = y.norm();
                        if ny == 0.0 || !ny.is_finite() {
                            break;
                        }
                        x = y / Complex64::new(ny, 0.0);
                    }
                    None => break,
                }
            }
            let r = &m * &x - &x * Complex64::new(lambda, 0.0);
            r.norm() / norm
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_swap() {
        let id = DenseMatrix::from_fn(5, |i, j| if i == j { 1.0 } else { 0.0 });
        assert_eq!(eigenvalues(id).unwrap(), vec![1.0; 5]);
        let swap = DenseMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { 1.0 });
        let ev = eigenvalues(swap).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn complex_two_by_two() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2
        let a = DenseMatrix::from_fn(2, |i, j| match (i, j) {
            (0, 1) => Complex64::new(0.0, 1.0),
            (1, 0) => Complex64::new(0.0, -1.0),
            _ => Complex64::new(1.0, 0.0),
        });
        let ev = eigenvalues(a).unwrap();
        assert!(ev[0].abs() < 1e-15 && (ev[1] - 2.0).abs() < 1e-15);
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigenvalues(DenseMatrix::<f64>::zeros(0))
            .unwrap()
            .is_empty());
        assert_eq!(
            eigenvalues(DenseMatrix::from_fn(1, |_, _| 3.5)).unwrap(),
            [3.5]
        );
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // second-difference matrix: 2 - 2 cos(k pi / (n+1))
        let n = 30;
        let t = SymTridiagonal {
            diag: vec![2.0; n],
            off: vec![-1.0; n - 1],
        };
        let ev = tridiagonal_eigenvalues(&t).unwrap();
        for (k, &x) in ev.iter().enumerate() {
            let exact =
                2.0 - 2.0 * (((k + 1) as f64) * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((x - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn already_diagonal_block_structure() {
        let a = DenseMatrix::from_fn(4, |i, j| match (i, j) {
            (0, 0) => 3.0,
            (1, 1) | (2, 2) => 1.0,
            (1, 2) | (2, 1) => 0.5,
            (3, 3) => -2.0,
            _ => 0.0,
        });
        let ev = eigenvalues(a).unwrap();
        let expected = [-2.0, 0.5, 1.5, 3.0];
        for (x, y) in ev.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
