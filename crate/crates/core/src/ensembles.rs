//! Gaussian ensembles and Poisson spectra, and seeded multi-realization
//! sweeps that accumulate ratio histograms.
//!
//! Entry variances are chosen so that the eigenvalue joint density carries
//! the weight `exp(-β e²/2)`:
//!
//! | ensemble | diagonal variance | off-diagonal variance per real component |
//! |----------|-------------------|------------------------------------------|
//! | GOE      | 1                 | 1/2                                      |
//! | GUE      | 1/2               | 1/4                                      |
//! | GSE      | 1/4               | 1/8                                      |
//!
//! GSE matrices are stored as `2N x 2N` complex Hermitian matrices built from
//! 2x2 quaternion blocks `[[z, w], [-w̄, z̄]]`, so every eigenvalue appears
//! twice; [`kramers_collapse`] removes the copies.
//!
//! Realization `i` of a sweep is drawn from `ChaCha8Rng::seed_from_u64(seed + i)`
//! and partial results are combined in index order, so the merged output
//! does not depend on the number of worker threads.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{ChiSquared, Distribution, Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fit::{fit_amplitude, AmplitudeFit};
use crate::histogram::{uniform_edges, Histogram};
use crate::linalg::{self, DenseMatrix, SymTridiagonal};
use crate::spectrum::{bulk_select, fold, ratio_series, Spectrum};
use crate::stats::{MeanAccumulator, MeanEstimate};
use crate::surmise::DysonIndex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnsembleKind {
    Poisson,
    Goe,
    Gue,
    Gse,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 4] = [Self::Poisson, Self::Goe, Self::Gue, Self::Gse];

    /// `None` for Poisson.
    pub fn dyson(self) -> Option<DysonIndex> {
        match self {
            Self::Poisson => None,
            Self::Goe => Some(DysonIndex::Orthogonal),
            Self::Gue => Some(DysonIndex::Unitary),
            Self::Gse => Some(DysonIndex::Symplectic),
        }
    }

    /// 0 for Poisson.
    pub fn beta(self) -> u32 {
        self.dyson().map_or(0, DysonIndex::beta)
    }

    pub fn from_dyson(beta: DysonIndex) -> Self {
        match beta {
            DysonIndex::Orthogonal => Self::Goe,
            DysonIndex::Unitary => Self::Gue,
            DysonIndex::Symplectic => Self::Gse,
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Poisson => "poisson",
            Self::Goe => "goe",
            Self::Gue => "gue",
            Self::Gse => "gse",
        })
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "poisson" => Ok(Self::Poisson),
            "goe" => Ok(Self::Goe),
            "gue" => Ok(Self::Gue),
            "gse" => Ok(Self::Gse),
            other => Err(Error::InvalidArgument(format!(
                "unknown ensemble {other:?}"
            ))),
        }
    }
}

/// How random matrices are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Sampler {
    /// Full self-adjoint matrices with Gaussian entries.
    #[default]
    Dense,
    /// Dumitriu-Edelman tridiagonal model with the same eigenvalue density;
    /// GSE eigenvalues come out without Kramers doubling.
    Tridiagonal,
}

impl FromStr for Sampler {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dense" => Ok(Self::Dense),
            "tridiagonal" => Ok(Self::Tridiagonal),
            other => Err(Error::InvalidArgument(format!("unknown sampler {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SampleMatrix {
    Real(DenseMatrix<f64>),
    Complex(DenseMatrix<Complex64>),
    Tridiagonal(SymTridiagonal),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RandomMatrixSample {
    pub kind: EnsembleKind,
    /// `N`; a dense GSE matrix has dimension `2N`.
    pub dimension: usize,
    pub matrix: SampleMatrix,
    pub seed: Option<u64>,
}

impl RandomMatrixSample {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Whether eigenvalues come in Kramers pairs.
    pub fn doubled(&self) -> bool {
        self.kind == EnsembleKind::Gse && matches!(self.matrix, SampleMatrix::Complex(_))
    }
}

fn normal(rng: &mut impl Rng, sd: f64) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    sd * z
}

fn check_size(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "matrix size must be >= 2, got {n}"
        )));
    }
    Ok(())
}

/// Draws a dense matrix whose eigenvalues follow the `β` joint density.
pub fn sample_matrix(
    kind: EnsembleKind,
    n: usize,
    rng: &mut impl Rng,
) -> Result<RandomMatrixSample> {
    check_size(n)?;
    let matrix = match kind {
        EnsembleKind::Poisson => {
            return Err(Error::InvalidArgument(
                "Poisson spectra are not matrix ensembles; use sample_poisson_spectrum".into(),
            ))
        }
        EnsembleKind::Goe => {
            let off = std::f64::consts::FRAC_1_SQRT_2;
            let mut a = DenseMatrix::zeros(n);
            for i in 0..n {
                a.set(i, i, normal(rng, 1.0));
                for j in i + 1..n {
                    a.set(i, j, normal(rng, off));
                }
            }
            a.hermitize_from_upper();
            SampleMatrix::Real(a)
        }
        EnsembleKind::Gue => {
            let diag = std::f64::consts::FRAC_1_SQRT_2;
            let mut a = DenseMatrix::zeros(n);
            for i in 0..n {
                a.set(i, i, Complex64::new(normal(rng, diag), 0.0));
                for j in i + 1..n {
                    a.set(i, j, Complex64::new(normal(rng, 0.5), normal(rng, 0.5)));
                }
            }
            a.hermitize_from_upper();
            SampleMatrix::Complex(a)
        }
        EnsembleKind::Gse => {
            let comp = (0.125f64).sqrt();
            let mut a = DenseMatrix::zeros(2 * n);
            for i in 0..n {
                let d = Complex64::new(normal(rng, 0.5), 0.0);
                a.set(2 * i, 2 * i, d);
                a.set(2 * i + 1, 2 * i + 1, d);
                for j in i + 1..n {
                    let z = Complex64::new(normal(rng, comp), normal(rng, comp));
                    let w = Complex64::new(normal(rng, comp), normal(rng, comp));
                    a.set(2 * i, 2 * j, z);
                    a.set(2 * i, 2 * j + 1, w);
                    a.set(2 * i + 1, 2 * j, -w.conj());
                    a.set(2 * i + 1, 2 * j + 1, z.conj());
                }
            }
            a.hermitize_from_upper();
            SampleMatrix::Complex(a)
        }
    };
    Ok(RandomMatrixSample {
        kind,
        dimension: n,
        matrix,
        seed: None,
    })
}

/// Tridiagonal `β`-ensemble: diagonal `N(0, 2)`, off-diagonal
/// `χ_{β(N-1)}, ..., χ_β`, all divided by `sqrt(2β)`.
pub fn sample_tridiagonal(
    kind: EnsembleKind,
    n: usize,
    rng: &mut impl Rng,
) -> Result<RandomMatrixSample> {
    check_size(n)?;
    let beta = kind
        .dyson()
        .ok_or_else(|| Error::InvalidArgument("Poisson spectra are not matrix ensembles".into()))?;
    let b = beta.as_f64();
    let scale = 1.0 / (2.0 * b).sqrt();
    let diag = (0..n)
        .map(|_| normal(rng, std::f64::consts::SQRT_2) * scale)
        .collect();
    let off = (1..n)
        .rev()
        .map(|k| {
            let chi2 = ChiSquared::new(b * k as f64).expect("positive degrees of freedom");
            let x: f64 = chi2.sample(rng);
            x.sqrt() * scale
        })
        .collect();
    Ok(RandomMatrixSample {
        kind,
        dimension: n,
        matrix: SampleMatrix::Tridiagonal(SymTridiagonal { diag, off }),
        seed: None,
    })
}

/// All eigenvalues, ascending (Kramers copies included for dense GSE).
pub fn hermitian_eigenvalues(sample: &RandomMatrixSample) -> Result<Spectrum> {
    let values = match &sample.matrix {
        SampleMatrix::Real(a) => linalg::eigenvalues(a.clone())?,
        SampleMatrix::Complex(a) => linalg::eigenvalues(a.clone())?,
        SampleMatrix::Tridiagonal(t) => linalg::tridiagonal_eigenvalues(t)?,
    };
    Spectrum::new(values)
}

pub const KRAMERS_DEFAULT_TOL: f64 = 1e-8;

/// Keeps one level of each degenerate pair. `rel_tol` is relative to the
/// spectral width.
pub fn kramers_collapse(spectrum: &Spectrum, rel_tol: f64) -> Result<Spectrum> {
    let e = spectrum.levels();
    if e.len() % 2 == 1 {
        return Err(Error::Kramers(format!(
            "odd number of levels ({})",
            e.len()
        )));
    }
    if e.is_empty() {
        return Ok(spectrum.clone());
    }
    let width = (e[e.len() - 1] - e[0]).abs().max(f64::MIN_POSITIVE);
    let (worst, at) = e
        .chunks_exact(2)
        .enumerate()
        .map(|(i, p)| (p[1] - p[0], i))
        .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
    if worst > rel_tol * width {
        return Err(Error::Kramers(format!(
            "pair {at} splits by {worst:e} (relative {:e}, tolerance {rel_tol:e})",
            worst / width
        )));
    }
    Spectrum::new(e.chunks_exact(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Cumulative sums of i.i.d. unit-mean exponential spacings, starting at 0.
pub fn sample_poisson_spectrum(n_levels: usize, rng: &mut impl Rng) -> Result<Spectrum> {
    if n_levels == 0 {
        return Err(Error::InvalidArgument("need at least one level".into()));
    }
    let mut levels = Vec::with_capacity(n_levels);
    let mut e = 0.0;
    levels.push(e);
    for _ in 1..n_levels {
        let s: f64 = Exp1.sample(rng);
        e += s;
        levels.push(e);
    }
    Spectrum::new(levels)
}

/// Parameters of a multi-realization sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub kind: EnsembleKind,
    /// Matrix size `N` (number of levels for Poisson).
    pub size: usize,
    pub realizations: u64,
    pub bulk_fraction: f64,
    pub ratio_edges: Vec<f64>,
    pub folded_edges: Vec<f64>,
    pub seed: u64,
    pub sampler: Sampler,
}

impl SweepConfig {
    /// Desk-scale defaults: `N = 200`, 2000 realizations, central half of
    /// the spectrum, 120 bins on `[0, 6]` for `r` and 50 on `[0, 1]` for `r̃`.
    pub fn new(kind: EnsembleKind) -> Self {
        Self {
            kind,
            size: 200,
            realizations: 2000,
            bulk_fraction: 0.5,
            ratio_edges: uniform_edges(0.0, 6.0, 120).expect("valid"),
            folded_edges: uniform_edges(0.0, 1.0, 50).expect("valid"),
            seed: 0,
            sampler: Sampler::Dense,
        }
    }

    pub fn size(mut self, n: usize) -> Self {
        self.size = n;
        self
    }

    pub fn realizations(mut self, k: u64) -> Self {
        self.realizations = k;
        self
    }

    pub fn bulk(mut self, f: f64) -> Self {
        self.bulk_fraction = f;
        self
    }

    pub fn seed(mut self, s: u64) -> Self {
        self.seed = s;
        self
    }

    pub fn sampler(mut self, s: Sampler) -> Self {
        self.sampler = s;
        self
    }

    pub fn realization_seed(&self, index: u64) -> u64 {
        self.seed.wrapping_add(index)
    }
}

/// Bulk-selected spectrum of realization `index`.
pub fn realization_spectrum(config: &SweepConfig, index: u64) -> Result<Spectrum> {
    let seed = config.realization_seed(index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wrap = |e: Error| Error::Realization {
        index,
        seed,
        source: Box::new(e),
    };
    let spectrum = if config.kind == EnsembleKind::Poisson {
        sample_poisson_spectrum(config.size, &mut rng).map_err(wrap)?
    } else {
        let sample = match config.sampler {
            Sampler::Dense => sample_matrix(config.kind, config.size, &mut rng),
            Sampler::Tridiagonal => sample_tridiagonal(config.kind, config.size, &mut rng),
        }
        .map_err(wrap)?;
        let full = hermitian_eigenvalues(&sample).map_err(wrap)?;
        if sample.doubled() {
            kramers_collapse(&full, KRAMERS_DEFAULT_TOL).map_err(wrap)?
        } else {
            full
        }
    };
    bulk_select(&spectrum, config.bulk_fraction).map_err(wrap)
}

#[derive(Debug, Clone, PartialEq)]
struct Partial {
    ratio: Histogram,
    folded: Histogram,
    ratio_mean: MeanAccumulator,
    folded_mean: MeanAccumulator,
    skipped: u64,
}

impl Partial {
    fn new(config: &SweepConfig) -> Result<Self> {
        Ok(Self {
            ratio: Histogram::empty(config.ratio_edges.clone())?,
            folded: Histogram::empty(config.folded_edges.clone())?,
            ratio_mean: MeanAccumulator::default(),
            folded_mean: MeanAccumulator::default(),
            skipped: 0,
        })
    }

    fn absorb(&mut self, spectrum: &Spectrum) -> Result<()> {
        if spectrum.len() < 3 {
            return Ok(());
        }
        let ratios = ratio_series(spectrum)?;
        self.skipped += ratios.skipped as u64;
        for &r in &ratios.values {
            let rt = fold(r);
            self.ratio.add(r);
            self.folded.add(rt);
            self.ratio_mean.push(r);
            self.folded_mean.push(rt);
        }
        Ok(())
    }

    fn merge(&mut self, other: &Partial) -> Result<()> {
        self.ratio.merge_from(&other.ratio)?;
        self.folded.merge_from(&other.folded)?;
        self.ratio_mean.merge(&other.ratio_mean);
        self.folded_mean.merge(&other.folded_mean);
        self.skipped += other.skipped;
        Ok(())
    }
}

/// Realizations per work unit. Units are folded in index order.
pub const CHUNK: u64 = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub ratio_histogram: Histogram,
    pub folded_histogram: Histogram,
    pub mean_ratio: Option<MeanEstimate>,
    pub mean_folded: Option<MeanEstimate>,
    /// Correction amplitude fitted to the ratio histogram (Gaussian ensembles).
    pub amplitude: Option<AmplitudeFit>,
    /// Ratios dropped because of exactly degenerate levels.
    pub skipped_zero_spacings: u64,
}

/// Samples, diagonalizes and accumulates `config.realizations` spectra.
pub fn run_realizations(config: &SweepConfig) -> Result<SweepResult> {
    if !(config.bulk_fraction > 0.0 && config.bulk_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "bulk fraction must lie in (0, 1], got {}",
            config.bulk_fraction
        )));
    }
    if config.realizations > 0 {
        if config.kind == EnsembleKind::Poisson {
            if config.size == 0 {
                return Err(Error::InvalidArgument("need at least one level".into()));
            }
        } else {
            check_size(config.size)?;
        }
    }
    let chunks = config.realizations.div_ceil(CHUNK);
    let partials: Vec<Partial> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut part = Partial::new(config)?;
            let end = ((c + 1) * CHUNK).min(config.realizations);
            for index in c * CHUNK..end {
                let spectrum = realization_spectrum(config, index)?;
                part.absorb(&spectrum)?;
            }
            Ok(part)
        })
        .collect::<Result<_>>()?;
    let mut total = Partial::new(config)?;
    for p in &partials {
        total.merge(p)?;
    }
    let amplitude = match config.kind.dyson() {
        Some(beta) if total.ratio.total() > 0 => Some(fit_amplitude(&total.ratio, beta)?),
        _ => None,
    };
    Ok(SweepResult {
        config: config.clone(),
        mean_ratio: total.ratio_mean.estimate(true),
        mean_folded: total.folded_mean.estimate(false),
        ratio_histogram: total.ratio,
        folded_histogram: total.folded,
        amplitude,
        skipped_zero_spacings: total.skipped,
    })
}

/// How the per-size amplitude is referenced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AmplitudeBaseline {
    /// `C_N` is the amplitude of the departure from the surmise itself.
    Surmise,
    /// `C_N` is the amplitude of the departure from the large-N law
    /// `P_W + C_ref δP`, i.e. the fitted amplitude minus `C_ref`.
    LargeN,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingPoint {
    pub size: usize,
    pub amplitude: f64,
    pub stderr: f64,
    pub ratios: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalingCurve {
    pub points: Vec<ScalingPoint>,
    /// Least-squares slope of `log |C_N|` against `log N` (two or more sizes).
    pub log_slope: Option<f64>,
}

/// Runs one sweep per size and fits the amplitude of each.
pub fn amplitude_scaling_curve(
    base: &SweepConfig,
    sizes: &[usize],
    realizations_for: impl Fn(usize) -> u64,
    baseline: AmplitudeBaseline,
) -> Result<ScalingCurve> {
    let beta = base.kind.dyson().ok_or_else(|| {
        Error::InvalidArgument("amplitude scaling needs a Gaussian ensemble".into())
    })?;
    let reference = match baseline {
        AmplitudeBaseline::Surmise => 0.0,
        AmplitudeBaseline::LargeN => beta.constants().amplitude,
    };
    let mut points = Vec::with_capacity(sizes.len());
    for &size in sizes {
        if size < 8 {
            return Err(Error::InvalidArgument(format!(
                "scaling sizes must be >= 8, got {size}"
            )));
        }
        let config = base.clone().size(size).realizations(realizations_for(size));
        let result = run_realizations(&config)?;
        let fit = result
            .amplitude
            .ok_or(Error::Empty("no ratios collected for the scaling fit"))?;
        points.push(ScalingPoint {
            size,
            amplitude: fit.amplitude - reference,
            stderr: fit.stderr,
            ratios: result.ratio_histogram.total(),
        });
    }
    let log_slope = (points.len() >= 2).then(|| {
        let xs: Vec<f64> = points.iter().map(|p| (p.size as f64).ln()).collect();
        let ys: Vec<f64> = points.iter().map(|p| p.amplitude.abs().ln()).collect();
        let n = xs.len() as f64;
        let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    });
    Ok(ScalingCurve { points, log_slope })
}
