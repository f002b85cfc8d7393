//! One-parameter fit of the correction amplitude `C` to a ratio histogram.
//!
//! The model `P_W(r) + C g(r)` is linear in `C`, so weighted least squares
//! has a closed form. Model values are bin averages (5-point Gauss-Legendre
//! per bin) so a histogram built by integrating a law over its bins is
//! reproduced exactly.

use crate::error::{Error, Result};
use crate::histogram::Histogram;
use crate::quadrature::gauss_legendre;
use crate::surmise::{correction_shape, surmise_density, DysonIndex};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmplitudeFit {
    pub amplitude: f64,
    pub stderr: f64,
    /// `sqrt(Σ w_b (d_b - model_b)^2 / Σ w_b)`.
    pub residual_norm: f64,
    pub bins_used: usize,
}

/// Bin averages of `(P_W, g)` on `[lo, hi)`.
pub fn bin_averages(beta: DysonIndex, lo: f64, hi: f64) -> (f64, f64) {
    let (x, w) = gauss_legendre(5);
    let (c, h) = (0.5 * (lo + hi), 0.5 * (hi - lo));
    let mut base = 0.0;
    let mut shape = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let r = c + h * xi;
        base += 0.5 * wi * surmise_density(beta, r);
        shape += 0.5 * wi * correction_shape(beta, r);
    }
    (base, shape)
}

/// Weighted fit on explicit bins. `variances`, when given, are the sampling
/// variances of `densities` and feed a sandwich standard error; otherwise
/// the residual scatter is used.
pub fn fit_amplitude_weighted(
    beta: DysonIndex,
    bins: &[(f64, f64)],
    densities: &[f64],
    weights: &[f64],
    variances: Option<&[f64]>,
) -> Result<AmplitudeFit> {
    if bins.is_empty() || weights.iter().all(|&w| w == 0.0) {
        return Err(Error::Empty("fit_amplitude on an empty histogram"));
    }
    let design: Vec<(f64, f64)> = bins
        .iter()
        .map(|&(lo, hi)| bin_averages(beta, lo, hi))
        .collect();
    let (mut sxx, mut sxy, mut sw) = (0.0, 0.0, 0.0);
    for ((&(base, g), &d), &w) in design.iter().zip(densities).zip(weights) {
        sxx += w * g * g;
        sxy += w * g * (d - base);
        sw += w;
    }
    if !(sxx > 0.0) {
        return Err(Error::DegenerateFit(
            "correction shape vanishes on all weighted bins",
        ));
    }
    let amplitude = sxy / sxx;
    let mut rss = 0.0;
    let mut sandwich = 0.0;
    let mut used = 0;
    for (i, (&(base, g), (&d, &w))) in design.iter().zip(densities.iter().zip(weights)).enumerate()
    {
        if w == 0.0 {
            continue;
        }
        used += 1;
        let res = d - base - amplitude * g;
        rss += w * res * res;
        if let Some(v) = variances {
            sandwich += w * w * g * g * v[i];
        }
    }
    let stderr = match variances {
        Some(_) => sandwich.sqrt() / sxx,
        None => {
            let dof = (used as f64 - 1.0).max(1.0);
            (rss / dof / sxx).sqrt()
        }
    };
    Ok(AmplitudeFit {
        amplitude,
        stderr,
        residual_norm: (rss / sw).sqrt(),
        bins_used: used,
    })
}

/// Fits `C` to a ratio histogram with bin counts as weights.
pub fn fit_amplitude(histogram: &Histogram, beta: DysonIndex) -> Result<AmplitudeFit> {
    if histogram.total() == 0 {
        return Err(Error::Empty("fit_amplitude on an empty histogram"));
    }
    let bins: Vec<(f64, f64)> = (0..histogram.bins()).map(|i| histogram.bin(i)).collect();
    let densities = histogram.densities();
    let weights: Vec<f64> = histogram.counts().iter().map(|&c| c as f64).collect();
    let total = histogram.total() as f64;
    // Poisson count noise: Var(d_b) = n_b / (N w_b)^2
    let variances: Vec<f64> = bins
        .iter()
        .zip(histogram.counts())
        .map(|(&(lo, hi), &c)| c as f64 / (total * (hi - lo)).powi(2))
        .collect();
    fit_amplitude_weighted(beta, &bins, &densities, &weights, Some(&variances))
}
