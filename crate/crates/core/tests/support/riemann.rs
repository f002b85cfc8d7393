//! Ordinates of the nontrivial zeros of ζ(1/2 + it), located as sign
//! changes of the Riemann–Siegel function Z(t).
//!
//! Z is evaluated with the main sum plus the first three remainder terms.
//! The remainder coefficients need derivatives of
//! Ψ(p) = cos 2π(p² − p − 1/16) / cos 2πp, an entire function, so its
//! Taylor series about p = 1/2 is computed once from a Cauchy integral.

#![allow(dead_code)]

use std::f64::consts::PI;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;

use num_complex::Complex64;

const TAYLOR_DEGREE: usize = 48;
const CIRCLE_POINTS: usize = 128;

fn psi_complex(p: Complex64) -> Complex64 {
    let arg = (p * p - p - 1.0 / 16.0) * (2.0 * PI);
    arg.cos() / (p * (2.0 * PI)).cos()
}

/// Taylor coefficients of Ψ(1/2 + ε) from the trapezoid rule on |ε| = 1.
fn psi_taylor() -> Vec<f64> {
    let samples: Vec<Complex64> = (0..CIRCLE_POINTS)
        .map(|j| {
            // A half-step offset keeps the nodes off the removable poles.
            let phase = 2.0 * PI * (j as f64 + 0.5) / CIRCLE_POINTS as f64;
            psi_complex(Complex64::new(0.5, 0.0) + Complex64::from_polar(1.0, phase))
        })
        .collect();
    (0..=TAYLOR_DEGREE)
        .map(|k| {
            let sum: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(j, f)| {
                    let phase = 2.0 * PI * (j as f64 + 0.5) / CIRCLE_POINTS as f64;
                    f * Complex64::from_polar(1.0, -(k as f64) * phase)
                })
                .sum();
            sum.re / CIRCLE_POINTS as f64
        })
        .collect()
}

pub struct RiemannSiegel {
    /// Taylor coefficients of Ψ about 1/2.
    psi: Vec<f64>,
    ln_n: Vec<f64>,
    inv_sqrt_n: Vec<f64>,
}

impl Default for RiemannSiegel {
    fn default() -> Self {
        Self::new()
    }
}

impl RiemannSiegel {
    pub fn new() -> Self {
        Self {
            psi: psi_taylor(),
            ln_n: Vec::new(),
            inv_sqrt_n: Vec::new(),
        }
    }

    fn ensure_terms(&mut self, n: usize) {
        while self.ln_n.len() < n {
            let k = (self.ln_n.len() + 1) as f64;
            self.ln_n.push(k.ln());
            self.inv_sqrt_n.push(1.0 / k.sqrt());
        }
    }

    /// k-th derivative of Ψ at p.
    fn psi_derivative(&self, p: f64, k: usize) -> f64 {
        let e = p - 0.5;
        let mut acc = 0.0;
        for m in (k..self.psi.len()).rev() {
            let falling: f64 = ((m - k + 1)..=m).map(|i| i as f64).product();
            acc = acc * e + self.psi[m] * falling;
        }
        acc
    }

    pub fn theta(t: f64) -> f64 {
        let t2 = t * t;
        t / 2.0 * (t / (2.0 * PI)).ln() - t / 2.0 - PI / 8.0
            + 1.0 / (48.0 * t)
            + 7.0 / (5760.0 * t * t2)
            + 31.0 / (80640.0 * t2 * t2 * t)
    }

    pub fn z(&mut self, t: f64) -> f64 {
        let a = (t / (2.0 * PI)).sqrt();
        let n = a.floor() as usize;
        self.ensure_terms(n);
        let th = Self::theta(t);
        let mut main = 0.0;
        for k in 0..n {
            main += self.inv_sqrt_n[k] * (th - t * self.ln_n[k]).cos();
        }
        let p = a - n as f64;
        let pi2 = PI * PI;
        let c0 = self.psi_derivative(p, 0);
        let c1 = -self.psi_derivative(p, 3) / (96.0 * pi2);
        let c2 = self.psi_derivative(p, 2) / (64.0 * pi2)
            + self.psi_derivative(p, 6) / (18432.0 * pi2 * pi2);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let inv_a = 1.0 / a;
        2.0 * main + sign * inv_a.sqrt() * (c0 + c1 * inv_a + c2 * inv_a * inv_a)
    }

    /// Root of Z in a bracket with a sign change (Illinois false position).
    fn refine(&mut self, mut lo: f64, mut flo: f64, mut hi: f64, mut fhi: f64) -> f64 {
        let mut side = 0i8;
        for _ in 0..100 {
            let mid = (lo * fhi - hi * flo) / (fhi - flo);
            if hi - lo < 1e-11 * hi {
                return mid;
            }
            let fm = self.z(mid);
            if fm == 0.0 {
                return mid;
            }
            if (fm > 0.0) == (fhi > 0.0) {
                hi = mid;
                fhi = fm;
                if side == 1 {
                    flo /= 2.0;
                }
                side = 1;
            } else {
                lo = mid;
                flo = fm;
                if side == -1 {
                    fhi /= 2.0;
                }
                side = -1;
            }
        }
        0.5 * (lo + hi)
    }

    /// Golden-section search for the minimum of sign·Z on [a, b].
    fn dip(&mut self, mut a: f64, mut b: f64, sign: f64) -> (f64, f64) {
        let g = 0.5 * (5f64.sqrt() - 1.0);
        let mut c = b - g * (b - a);
        let mut d = a + g * (b - a);
        let mut fc = sign * self.z(c);
        let mut fd = sign * self.z(d);
        for _ in 0..40 {
            if fc < fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = sign * self.z(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = sign * self.z(d);
            }
        }
        if fc < fd {
            (c, fc)
        } else {
            (d, fd)
        }
    }

    /// The first `count` zero ordinates, in increasing order.
    pub fn zeros(&mut self, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count);
        let mut t = 10.0;
        let mut ft = self.z(t);
        // The last two samples, for spotting a missed pair.
        let mut prev: Option<(f64, f64)> = None;
        while out.len() < count {
            let spacing = 2.0 * PI / (t / (2.0 * PI)).ln();
            let next = t + spacing / 20.0;
            let fn_ = self.z(next);
            if (ft > 0.0) != (fn_ > 0.0) {
                out.push(self.refine(t, ft, next, fn_));
            } else if let Some((tp, fp)) = prev {
                // |Z| dipped without crossing: look between the samples.
                if (fp > 0.0) == (ft > 0.0) && ft.abs() < fp.abs() && ft.abs() < fn_.abs() {
                    let sign = ft.signum();
                    let (tm, _) = self.dip(tp, next, sign);
                    let fm = self.z(tm);
                    if (fm > 0.0) != (ft > 0.0) {
                        let r1 = self.refine(tp, fp, tm, fm);
                        let r2 = self.refine(tm, fm, next, fn_);
                        out.push(r1.min(r2));
                        out.push(r1.max(r2));
                    }
                }
            }
            prev = Some((t, ft));
            t = next;
            ft = fn_;
        }
        out.truncate(count);
        out
    }
}

/// Count of zeros with ordinate below `t`, ignoring S(t).
pub fn smooth_count(t: f64) -> f64 {
    RiemannSiegel::theta(t) / PI + 1.0
}

pub fn write_zero_table(path: &Path, zeros: &[f64]) -> std::io::Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "# n  ordinate")?;
    for (i, z) in zeros.iter().enumerate() {
        writeln!(w, "{} {:.9}", i + 1, z)?;
    }
    w.flush()
}

/// Loads `count` zeros from `path`, generating and caching them first if
/// the file is missing or too short.
pub fn cached_zeros(path: &Path, count: usize) -> Vec<f64> {
    if let Ok(text) = fs::read_to_string(path) {
        let zeros: Vec<f64> = text
            .lines()
            .filter(|l| !l.starts_with('#'))
            .filter_map(|l| l.split_whitespace().last()?.parse().ok())
            .collect();
        if zeros.len() >= count {
            return zeros[..count].to_vec();
        }
    }
    let zeros = RiemannSiegel::new().zeros(count);
    let _ = write_zero_table(path, &zeros);
    zeros
}
