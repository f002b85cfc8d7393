//! Spectra and the spacing/ratio sequences derived from them.
//!
//! A [`Spectrum`] is an ordered list of real levels `e_0 <= e_1 <= ...`.
//! From it we derive
//!
//! - spacings `s_n = e_{n+1} - e_n`,
//! - consecutive-spacing ratios `r_n = s_n / s_{n-1}`,
//! - folded ratios `min(r_n, 1/r_n)` in `[0, 1]`,
//! - overlapping ratios `(e_{n+2} - e_n) / (e_{n+1} - e_{n-1})`.
//!
//! None of these depend on the local density of states, so no unfolding is
//! ever applied.

use crate::error::{Error, Result};

/// Ordered real energy levels.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    levels: Vec<f64>,
}

impl Spectrum {
    /// Wraps `levels`, rejecting non-finite values and the first inversion.
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        for (index, &value) in levels.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        if let Some(index) = levels.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::Unsorted {
                index: index + 1,
                previous: levels[index],
                value: levels[index + 1],
            });
        }
        Ok(Self { levels })
    }

    /// Sorts `levels` ascending first. Returns whether the input order changed.
    pub fn from_unsorted(mut levels: Vec<f64>) -> Result<(Self, bool)> {
        for (index, &value) in levels.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
        }
        let was_sorted = levels.windows(2).all(|w| w[0] <= w[1]);
        if !was_sorted {
            levels.sort_by(f64::total_cmp);
        }
        Ok((Self { levels }, !was_sorted))
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn into_levels(self) -> Vec<f64> {
        self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    fn require(&self, what: &'static str, needed: usize) -> Result<()> {
        if self.levels.len() < needed {
            return Err(Error::TooShort {
                what,
                needed,
                got: self.levels.len(),
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioKind {
    Spacing,
    Ratio,
    Folded,
    Overlapping,
}

/// What to do when a ratio would divide by an exactly zero spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ZeroSpacingPolicy {
    /// Drop the entry and count it in [`RatioSeries::skipped`].
    #[default]
    Skip,
    /// Fail with [`Error::ZeroSpacing`].
    Strict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RatioSeries {
    pub kind: RatioKind,
    pub values: Vec<f64>,
    /// Entries dropped because of a zero denominator.
    pub skipped: usize,
}

impl RatioSeries {
    pub fn new(kind: RatioKind, values: Vec<f64>) -> Self {
        Self {
            kind,
            values,
            skipped: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

pub fn spacings(spectrum: &Spectrum) -> Result<RatioSeries> {
    spectrum.require("spacings", 2)?;
    let values = spectrum.levels.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(RatioSeries::new(RatioKind::Spacing, values))
}

/// `r_n = s_n / s_{n-1}` with the default skip-and-count zero policy.
pub fn ratio_series(spectrum: &Spectrum) -> Result<RatioSeries> {
    ratio_series_with(spectrum, ZeroSpacingPolicy::Skip)
}

pub fn ratio_series_with(spectrum: &Spectrum, policy: ZeroSpacingPolicy) -> Result<RatioSeries> {
    spectrum.require("ratio_series", 3)?;
    let e = &spectrum.levels;
    let pairs = (1..e.len() - 1).map(|n| (n - 1, e[n + 1] - e[n], e[n] - e[n - 1]));
    collect_quotients(RatioKind::Ratio, pairs, policy)
}

/// `(e_{n+2} - e_n) / (e_{n+1} - e_{n-1})` for every `n` with both spans defined.
pub fn overlapping_ratios(spectrum: &Spectrum) -> Result<RatioSeries> {
    overlapping_ratios_with(spectrum, ZeroSpacingPolicy::Skip)
}

pub fn overlapping_ratios_with(
    spectrum: &Spectrum,
    policy: ZeroSpacingPolicy,
) -> Result<RatioSeries> {
    spectrum.require("overlapping_ratios", 4)?;
    let e = &spectrum.levels;
    let pairs = (1..e.len() - 2).map(|n| (n - 1, e[n + 2] - e[n], e[n + 1] - e[n - 1]));
    collect_quotients(RatioKind::Overlapping, pairs, policy)
}

fn collect_quotients(
    kind: RatioKind,
    pairs: impl Iterator<Item = (usize, f64, f64)>,
    policy: ZeroSpacingPolicy,
) -> Result<RatioSeries> {
    let mut values = Vec::with_capacity(pairs.size_hint().0);
    let mut skipped = 0;
    for (index, num, den) in pairs {
        if den == 0.0 {
            match policy {
                ZeroSpacingPolicy::Skip => skipped += 1,
                ZeroSpacingPolicy::Strict => return Err(Error::ZeroSpacing { index }),
            }
            continue;
        }
        values.push(num / den);
    }
    Ok(RatioSeries {
        kind,
        values,
        skipped,
    })
}

/// `min(r, 1/r)` elementwise.
pub fn fold_ratios(ratios: &RatioSeries) -> Result<RatioSeries> {
    if let Some(index) = ratios.values.iter().position(|&r| !(r >= 0.0)) {
        return Err(Error::InvalidArgument(format!(
            "ratio {index} is negative or NaN ({})",
            ratios.values[index]
        )));
    }
    let values = ratios.values.iter().map(|&r| fold(r)).collect();
    Ok(RatioSeries {
        kind: RatioKind::Folded,
        values,
        skipped: ratios.skipped,
    })
}

#[inline]
pub(crate) fn fold(r: f64) -> f64 {
    if r <= 1.0 {
        r
    } else {
        1.0 / r
    }
}

/// Keeps the central `ceil(fraction * len)` levels. When the number of
/// discarded levels is odd the extra one comes off the top.
pub fn bulk_select(spectrum: &Spectrum, fraction: f64) -> Result<Spectrum> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bulk fraction must lie in (0, 1], got {fraction}"
        )));
    }
    let n = spectrum.len();
    // guard against 0.7 * 10 = 7.000000000000001 rounding up to 8
    let keep = ((fraction * n as f64) * (1.0 - 4.0 * f64::EPSILON)).ceil() as usize;
    let keep = keep.min(n);
    if keep == 0 {
        return Err(Error::Empty("bulk selection is empty"));
    }
    let bottom = (n - keep) / 2;
    Ok(Spectrum {
        levels: spectrum.levels[bottom..bottom + keep].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn spacings_examples() {
        assert_eq!(
            spacings(&spec(&[0.0, 1.0, 3.0])).unwrap().values,
            [1.0, 2.0]
        );
        assert_eq!(
            spacings(&spec(&[0.0, 0.5, 1.0, 2.5])).unwrap().values,
            [0.5, 0.5, 1.5]
        );
        assert!(matches!(
            spacings(&spec(&[5.0])),
            Err(Error::TooShort { got: 1, .. })
        ));
    }

    #[test]
    fn unsorted_input_names_first_inversion() {
        match Spectrum::new(vec![0.0, 2.0, 1.0, 0.5]) {
            Err(Error::Unsorted { index, .. }) => assert_eq!(index, 2),
            other => panic!("unexpected {other:?}"),
        }
        let (s, changed) = Spectrum::from_unsorted(vec![3.0, 1.0, 2.0]).unwrap();
        assert!(changed);
        assert_eq!(s.levels(), [1.0, 2.0, 3.0]);
    }

    #[test]
    fn ratio_examples() {
        let r = |v: &[f64]| ratio_series(&spec(v)).unwrap().values;
        assert_eq!(r(&[0.0, 1.0, 2.0, 3.0, 4.0]), [1.0, 1.0, 1.0]);
        assert_eq!(r(&[0.0, 2.0, 3.0, 7.0]), [0.5, 4.0]);
        assert_eq!(r(&[0.0, 1.0, 3.0]), [2.0]);
        assert!(ratio_series(&spec(&[0.0, 1.0])).is_err());
    }

    #[test]
    fn zero_spacing_policies() {
        let s = spec(&[0.0, 1.0, 1.0, 2.0, 4.0]);
        let skipped = ratio_series(&s).unwrap();
        // spacings [1, 0, 1, 2]: ratios 0/1, 1/0 (skipped), 2/1
        assert_eq!(skipped.values, [0.0, 2.0]);
        assert_eq!(skipped.skipped, 1);
        assert!(matches!(
            ratio_series_with(&s, ZeroSpacingPolicy::Strict),
            Err(Error::ZeroSpacing { index: 1 })
        ));
    }

    #[test]
    fn fold_examples() {
        let f = |v: &[f64]| {
            fold_ratios(&RatioSeries::new(RatioKind::Ratio, v.to_vec()))
                .unwrap()
                .values
        };
        assert_eq!(f(&[0.5, 4.0]), [0.5, 0.25]);
        assert_eq!(f(&[1.0]), [1.0]);
        assert_eq!(f(&[0.0]), [0.0]);
        assert!(fold_ratios(&RatioSeries::new(RatioKind::Ratio, vec![-1.0])).is_err());
    }

    #[test]
    fn overlapping_examples() {
        let o = |v: &[f64]| overlapping_ratios(&spec(v)).unwrap().values;
        assert_eq!(o(&[0.0, 1.0, 3.0, 4.0]), [1.0]);
        assert_eq!(o(&[0.0, 1.0, 2.0, 3.0]), [1.0]);
        assert_eq!(o(&[0.0, 1.0, 2.0, 4.0]), [1.5]);
        assert!(overlapping_ratios(&spec(&[0.0, 1.0, 2.0])).is_err());
        let even: Vec<f64> = (0..50).map(|i| i as f64 * 0.3).collect();
        assert!(o(&even).iter().all(|&x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn bulk_examples() {
        let eight = spec(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0]);
        assert_eq!(
            bulk_select(&eight, 0.5).unwrap().levels(),
            [3.0, 4.0, 5.0, 6.0]
        );
        assert_eq!(bulk_select(&eight, 1.0).unwrap(), eight);
        let three = spec(&[1.0, 2.0, 3.0]);
        assert_eq!(bulk_select(&three, 0.1).unwrap().levels(), [2.0]);
        // 8 levels, keep 5: discard 3, one from the bottom and two from the top
        assert_eq!(
            bulk_select(&eight, 0.6).unwrap().levels(),
            [2.0, 3.0, 4.0, 5.0, 6.0]
        );
        assert!(bulk_select(&eight, 0.0).is_err());
        assert!(bulk_select(&spec(&[]), 0.5).is_err());
        let ten: Vec<f64> = (0..10).map(f64::from).collect();
        assert_eq!(bulk_select(&spec(&ten), 0.7).unwrap().len(), 7);
    }
}
