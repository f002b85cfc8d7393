//! Sample means and Kolmogorov-Smirnov distances.

use crate::error::{Error, Result};
use crate::spectrum::{RatioKind, RatioSeries};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub count: u64,
    /// Set for raw ratios, whose variance is infinite for beta <= 2 and
    /// whose mean diverges for Poisson spectra. Prefer the folded mean.
    pub heavy_tail: bool,
}

/// Streaming mean/variance (Welford), mergeable with Chan's update.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct MeanAccumulator {
    count: u64,
    mean: f64,
    m2: f64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &MeanAccumulator) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let n = (self.count + other.count) as f64;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / n;
        self.m2 += other.m2 + delta * delta * (self.count as f64 * other.count as f64) / n;
        self.count += other.count;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn estimate(&self, heavy_tail: bool) -> Option<MeanEstimate> {
        if self.count == 0 {
            return None;
        }
        let var = if self.count > 1 {
            self.m2 / (self.count - 1) as f64
        } else {
            0.0
        };
        Some(MeanEstimate {
            mean: self.mean,
            stderr: (var / self.count as f64).sqrt(),
            count: self.count,
            heavy_tail,
        })
    }
}

pub fn ratio_means(values: &RatioSeries) -> Result<MeanEstimate> {
    let mut acc = MeanAccumulator::default();
    for &v in &values.values {
        acc.push(v);
    }
    acc.estimate(values.kind == RatioKind::Ratio)
        .ok_or(Error::Empty("ratio_means of an empty series"))
}

/// Sup-distance between the empirical CDF of `values` and `reference_cdf`.
pub fn ks_distance(values: &[f64], reference_cdf: impl Fn(f64) -> f64) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = reference_cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d.clamp(0.0, 1.0)
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn mean_of_folded_pair() {
        let s = RatioSeries::new(RatioKind::Folded, vec![0.5, 0.25]);
        let m = ratio_means(&s).unwrap();
        assert!((m.mean - 0.375).abs() < 1e-15);
        assert!(!m.heavy_tail);
        assert!(
            ratio_means(&RatioSeries::new(RatioKind::Ratio, vec![1.0]))
                .unwrap()
                .heavy_tail
        );
        assert!(ratio_means(&RatioSeries::new(RatioKind::Folded, vec![])).is_err());
    }

    #[test]
    fn accumulator_merge_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let xs: Vec<f64> = (0..1000).map(|_| rng.gen::<f64>()).collect();
        let mut all = MeanAccumulator::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut a = MeanAccumulator::default();
        let mut b = MeanAccumulator::default();
        xs[..317].iter().for_each(|&x| a.push(x));
        xs[317..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        let (ea, eb) = (all.estimate(false).unwrap(), a.estimate(false).unwrap());
        assert!((ea.mean - eb.mean).abs() < 1e-14);
        assert!((ea.stderr - eb.stderr).abs() < 1e-14);
    }

    #[test]
    fn ks_single_value_at_median() {
        let d = ks_distance(&[1.0], |r| r / (1.0 + r));
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_degenerate_mass_at_zero() {
        let d = ks_distance(&[0.0; 100], |r| r / (1.0 + r));
        assert!(d >= 0.99);
    }

    #[test]
    fn ks_self_sample_is_small() {
        // uniform draws against the uniform cdf
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xs: Vec<f64> = (0..100_000).map(|_| rng.gen::<f64>()).collect();
        assert!(ks_distance(&xs, |x| x.clamp(0.0, 1.0)) < 0.01);
    }

    #[test]
    fn two_sample_ks_examples() {
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[1.0, 2.0]), 0.0);
        assert_eq!(ks_two_sample(&[1.0, 2.0], &[3.0, 4.0]), 1.0);
        assert!((ks_two_sample(&[1.0, 3.0], &[2.0, 4.0]) - 0.5).abs() < 1e-15);
    }
}
