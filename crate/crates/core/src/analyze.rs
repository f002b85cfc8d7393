//! Ratio statistics of a single spectrum and its distance to each
//! reference law.

use crate::error::{Error, Result};
use crate::histogram::{uniform_edges, Histogram};
use crate::spectrum::{bulk_select, fold_ratios, ratio_series, Spectrum};
use crate::stats::{ks_distance, ratio_means, MeanEstimate};
use crate::surmise::{DysonIndex, FoldedCdfTable, RatioLaw};

pub const MIN_LEVELS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzeOptions {
    pub bulk_fraction: f64,
    pub ratio_edges: Vec<f64>,
    pub folded_edges: Vec<f64>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            bulk_fraction: 1.0,
            ratio_edges: uniform_edges(0.0, 6.0, 120).expect("valid edges"),
            folded_edges: uniform_edges(0.0, 1.0, 50).expect("valid edges"),
        }
    }
}

/// The four laws every report is compared against.
pub fn reference_laws() -> [RatioLaw; 4] {
    [
        RatioLaw::Poisson,
        RatioLaw::Surmise(DysonIndex::Orthogonal),
        RatioLaw::Surmise(DysonIndex::Unitary),
        RatioLaw::Surmise(DysonIndex::Symplectic),
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub levels: usize,
    pub mean_ratio: MeanEstimate,
    pub mean_folded: MeanEstimate,
    /// Folded-ratio KS distance to each of [`reference_laws`], in order.
    pub ks: Vec<(RatioLaw, f64)>,
    pub ratio_histogram: Histogram,
    pub folded_histogram: Histogram,
    pub skipped_zero_spacings: usize,
    /// Every folded ratio is identical (e.g. a picket-fence spectrum), so
    /// distances to the continuous laws carry no information.
    pub degenerate: bool,
}

impl AnalysisReport {
    pub fn best_law(&self) -> RatioLaw {
        self.ks
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|x| x.0)
            .expect("four laws")
    }

    pub fn ks_to(&self, law: RatioLaw) -> Option<f64> {
        self.ks.iter().find(|x| x.0 == law).map(|x| x.1)
    }
}

pub fn analyze_spectrum(spectrum: &Spectrum, options: &AnalyzeOptions) -> Result<AnalysisReport> {
    if spectrum.len() < MIN_LEVELS {
        return Err(Error::TooShort {
            what: "analyze_spectrum",
            needed: MIN_LEVELS,
            got: spectrum.len(),
        });
    }
    let bulk = bulk_select(spectrum, options.bulk_fraction)?;
    let ratios = ratio_series(&bulk)?;
    let folded = fold_ratios(&ratios)?;
    if folded.is_empty() {
        return Err(Error::Empty("every ratio was skipped"));
    }
    let ks = reference_laws()
        .into_iter()
        .map(|law| {
            let table = FoldedCdfTable::new(law, 1000);
            (law, ks_distance(&folded.values, |x| table.eval(x)))
        })
        .collect();
    let first = folded.values[0];
    Ok(AnalysisReport {
        levels: bulk.len(),
        mean_ratio: ratio_means(&ratios)?,
        mean_folded: ratio_means(&folded)?,
        ks,
        ratio_histogram: Histogram::from_values(&ratios.values, options.ratio_edges.clone())?,
        folded_histogram: Histogram::from_values(&folded.values, options.folded_edges.clone())?,
        skipped_zero_spacings: ratios.skipped,
        degenerate: folded.values.iter().all(|&v| v == first),
    })
}
