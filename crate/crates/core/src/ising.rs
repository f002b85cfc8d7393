//! Periodic Ising chain in transverse and longitudinal fields,
//!
//! `H = -Σ_n (σˣ_n σˣ_{n+1} + λ σᶻ_n + α σˣ_n)`, `σˣ_{L+1} = σˣ_1`,
//!
//! block-diagonalized by translations. Basis states are bit strings with
//! bit `n` set for spin down at site `n` (`σᶻ = 1 - 2 bit`). A momentum
//! state is built on the smallest integer of a translation orbit.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::histogram::{uniform_edges, Histogram};
use crate::linalg::{eigenvalues, DenseMatrix};
use crate::spectrum::{bulk_select, fold_ratios, ratio_series, RatioSeries, Spectrum};
use crate::stats::{ks_distance, ratio_means, MeanEstimate};
use crate::surmise::{DysonIndex, FoldedCdfTable, RatioLaw};

/// Largest chain handled; the orbit tables hold `2^L` entries.
pub const MAX_LENGTH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsingParams {
    pub length: usize,
    pub lambda: f64,
    pub alpha: f64,
}

impl IsingParams {
    pub fn new(length: usize, lambda: f64, alpha: f64) -> Result<Self> {
        if !(3..=MAX_LENGTH).contains(&length) {
            return Err(Error::InvalidArgument(format!(
                "chain length must lie in 3..={MAX_LENGTH}, got {length}"
            )));
        }
        if !lambda.is_finite() || !alpha.is_finite() {
            return Err(Error::InvalidArgument("fields must be finite".into()));
        }
        Ok(Self {
            length,
            lambda,
            alpha,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Orbit {
    pub representative: u64,
    pub period: usize,
}

/// Translation by one site: bit `n` moves to bit `n + 1 (mod L)`.
fn translate(state: u64, length: usize) -> u64 {
    let mask = (1u64 << length) - 1;
    ((state << 1) | (state >> (length - 1))) & mask
}

/// Representative of every basis state and the shift `l` with
/// `T^l rep = state`.
struct OrbitTable {
    rep: Vec<u64>,
    shift: Vec<u32>,
}

impl OrbitTable {
    fn new(length: usize) -> Self {
        let dim = 1usize << length;
        let mut rep = vec![u64::MAX; dim];
        let mut shift = vec![0u32; dim];
        for s in 0..dim as u64 {
            if rep[s as usize] != u64::MAX {
                continue;
            }
            // s is the smallest unvisited state, so it represents its orbit
            let mut x = s;
            let mut l = 0u32;
            loop {
                rep[x as usize] = s;
                shift[x as usize] = l;
                x = translate(x, length);
                l += 1;
                if x == s {
                    break;
                }
            }
        }
        Self { rep, shift }
    }
}

fn check_length(length: usize) -> Result<()> {
    if !(1..=MAX_LENGTH).contains(&length) {
        return Err(Error::InvalidArgument(format!(
            "chain length must lie in 1..={MAX_LENGTH}, got {length}"
        )));
    }
    Ok(())
}

/// One entry per translation orbit of the `2^L` basis states, ordered by
/// representative.
pub fn orbit_representatives(length: usize) -> Result<Vec<Orbit>> {
    check_length(length)?;
    let mut out = Vec::new();
    for s in 0..1u64 << length {
        let mut x = translate(s, length);
        let mut period = 1;
        let mut minimal = true;
        while x != s {
            if x < s {
                minimal = false;
                break;
            }
            x = translate(x, length);
            period += 1;
        }
        if minimal {
            out.push(Orbit {
                representative: s,
                period,
            });
        }
    }
    Ok(out)
}

/// Orbits compatible with momentum `2πj/L`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinSectorBasis {
    pub length: usize,
    pub momentum: usize,
    pub states: Vec<Orbit>,
}

impl SpinSectorBasis {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    /// Norm of the unnormalized momentum state `Σ_l e^{-ikl} T^l |a⟩`,
    /// which is `L / sqrt(p)`.
    pub fn normalization(&self, index: usize) -> f64 {
        self.length as f64 / (self.states[index].period as f64).sqrt()
    }

    pub fn index_of(&self, representative: u64) -> Option<usize> {
        self.states
            .binary_search_by_key(&representative, |o| o.representative)
            .ok()
    }
}

pub fn sector_basis(length: usize, momentum: usize) -> Result<SpinSectorBasis> {
    check_length(length)?;
    if momentum >= length {
        return Err(Error::InvalidArgument(format!(
            "momentum index {momentum} must be below L = {length}"
        )));
    }
    let states = orbit_representatives(length)?
        .into_iter()
        .filter(|o| (momentum * o.period) % length == 0)
        .collect();
    Ok(SpinSectorBasis {
        length,
        momentum,
        states,
    })
}

/// Nonzero entries `(H_{s,a}, s)` of column `a` of the Hamiltonian.
fn column(params: &IsingParams, a: u64, out: &mut Vec<(f64, u64)>) {
    out.clear();
    let l = params.length;
    let down = a.count_ones() as f64;
    out.push((-params.lambda * (l as f64 - 2.0 * down), a));
    for n in 0..l {
        let m = (n + 1) % l;
        out.push((-1.0, a ^ (1 << n) ^ (1 << m)));
        if params.alpha != 0.0 {
            out.push((-params.alpha, a ^ (1 << n)));
        }
    }
}

/// Hamiltonian block of momentum `2πj/L`, built column by column in the
/// upper triangle and completed by conjugation.
pub fn build_sector_hamiltonian(
    params: &IsingParams,
    momentum: usize,
) -> Result<DenseMatrix<Complex64>> {
    let basis = sector_basis(params.length, momentum)?;
    let table = OrbitTable::new(params.length);
    Ok(assemble(params, &basis, &table))
}

fn assemble(
    params: &IsingParams,
    basis: &SpinSectorBasis,
    table: &OrbitTable,
) -> DenseMatrix<Complex64> {
    let k = 2.0 * PI * basis.momentum as f64 / params.length as f64;
    let dim = basis.dim();
    let mut h = DenseMatrix::<Complex64>::zeros(dim);
    let mut col = Vec::new();
    for (ia, orbit) in basis.states.iter().enumerate() {
        column(params, orbit.representative, &mut col);
        for &(value, s) in &col {
            let b = table.rep[s as usize];
            let Some(ib) = basis.index_of(b) else {
                continue;
            };
            if ib > ia {
                continue;
            }
            let shift = table.shift[s as usize] as f64;
            let scale = (orbit.period as f64 / basis.states[ib].period as f64).sqrt();
            h.add_at(ib, ia, Complex64::from_polar(value * scale, k * shift));
        }
    }
    h.hermitize_from_upper();
    h
}

pub fn sector_spectrum(params: &IsingParams, momentum: usize) -> Result<Spectrum> {
    let h = build_sector_hamiltonian(params, momentum)?;
    Spectrum::new(eigenvalues(h)?)
}

/// Spectra of every momentum sector, indexed by `j`.
pub fn all_sector_spectra(params: &IsingParams) -> Result<Vec<Spectrum>> {
    let table = OrbitTable::new(params.length);
    (0..params.length)
        .map(|j| {
            let basis = sector_basis(params.length, j)?;
            Spectrum::new(eigenvalues(assemble(params, &basis, &table))?)
        })
        .collect()
}

/// Sectors smaller than this give a warning in [`ising_ratio_stats`].
pub const MIN_SECTOR_DIM: usize = 100;
pub const DEFAULT_BULK: f64 = 0.9;

#[derive(Debug, Clone, PartialEq)]
pub struct IsingStats {
    pub params: IsingParams,
    pub momentum: usize,
    pub sector_dim: usize,
    pub levels_used: usize,
    pub ratio_histogram: Histogram,
    pub folded_histogram: Histogram,
    pub mean_ratio: MeanEstimate,
    pub mean_folded: MeanEstimate,
    /// KS distance of the folded ratios to the GOE surmise.
    pub ks_goe: f64,
    pub skipped_zero_spacings: usize,
    pub warnings: Vec<String>,
}

/// Sector spectrum, central `bulk_fraction` of levels, ratio statistics
/// and the distance to the GOE surmise.
pub fn ising_ratio_stats(
    params: &IsingParams,
    momentum: usize,
    bulk_fraction: f64,
) -> Result<IsingStats> {
    let spectrum = sector_spectrum(params, momentum)?;
    let mut warnings = Vec::new();
    if spectrum.len() < MIN_SECTOR_DIM {
        warnings.push(format!(
            "sector j={momentum} of L={} has only {} states; ratio statistics are noisy",
            params.length,
            spectrum.len()
        ));
    }
    let bulk = bulk_select(&spectrum, bulk_fraction)?;
    let ratios = ratio_series(&bulk)?;
    if ratios.skipped > 0 {
        warnings.push(format!(
            "{} ratios skipped at degenerate levels",
            ratios.skipped
        ));
    }
    let folded = fold_ratios(&ratios)?;
    let goe = FoldedCdfTable::new(RatioLaw::Surmise(DysonIndex::Orthogonal), 1000);
    let ks_goe = ks_distance(&folded.values, |x| goe.eval(x));
    Ok(IsingStats {
        params: *params,
        momentum,
        sector_dim: spectrum.len(),
        levels_used: bulk.len(),
        ratio_histogram: histogram(&ratios, 6.0, 120)?,
        folded_histogram: histogram(&folded, 1.0, 50)?,
        mean_ratio: ratio_means(&ratios)?,
        mean_folded: ratio_means(&folded)?,
        ks_goe,
        skipped_zero_spacings: ratios.skipped,
        warnings,
    })
}

fn histogram(series: &RatioSeries, hi: f64, bins: usize) -> Result<Histogram> {
    Histogram::from_values(&series.values, uniform_edges(0.0, hi, bins)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_examples() {
        let o = orbit_representatives(2).unwrap();
        let got: Vec<(u64, usize)> = o.iter().map(|o| (o.representative, o.period)).collect();
        assert_eq!(got, [(0, 1), (1, 2), (3, 1)]);
        assert_eq!(orbit_representatives(4).unwrap().len(), 6);
        for l in 1..=12 {
            let total: usize = orbit_representatives(l)
                .unwrap()
                .iter()
                .map(|o| o.period)
                .sum();
            assert_eq!(total, 1 << l);
        }
    }

    #[test]
    fn sector_dimensions() {
        assert_eq!(sector_basis(3, 0).unwrap().dim(), 4);
        for l in 1..=14 {
            let dims: Vec<usize> = (0..l).map(|j| sector_basis(l, j).unwrap().dim()).collect();
            assert_eq!(dims.iter().sum::<usize>(), 1 << l, "L={l}");
            for j in 1..l {
                assert_eq!(dims[j], dims[l - j]);
            }
        }
        assert!(sector_basis(4, 4).is_err());
    }

    #[test]
    fn sector_matrices_are_hermitian_and_traceless() {
        let p = IsingParams::new(7, 0.5, 0.5).unwrap();
        let mut trace = 0.0;
        for j in 0..7 {
            let h = build_sector_hamiltonian(&p, j).unwrap();
            assert!(h.hermiticity_residual() < 1e-14);
            trace += h.trace();
        }
        assert!(trace.abs() < 1e-10);
        let h0 = build_sector_hamiltonian(&IsingParams::new(8, 0.3, 0.7).unwrap(), 4).unwrap();
        for i in 0..h0.dim() {
            for j in 0..h0.dim() {
                assert!(h0.get(i, j).im.abs() < 1e-14);
            }
        }
    }

    #[test]
    fn conjugate_sectors_share_spectra() {
        let p = IsingParams::new(9, 0.5, 0.5).unwrap();
        for j in 1..9 {
            let a = sector_spectrum(&p, j).unwrap();
            let b = sector_spectrum(&p, 9 - j).unwrap();
            for (x, y) in a.levels().iter().zip(b.levels()) {
                assert!((x - y).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn strong_transverse_field_clusters() {
        // at leading order E = -λ (L - 2 n_down) with n_down spins flipped
        let lambda = 1e3;
        let p = IsingParams::new(6, lambda, 0.0).unwrap();
        for s in all_sector_spectra(&p).unwrap() {
            for &e in s.levels() {
                let n = (e / lambda + 6.0) / 2.0;
                assert!((n - n.round()).abs() < 0.01, "e={e}");
            }
        }
    }

    #[test]
    fn small_sector_warns() {
        let p = IsingParams::new(6, 0.5, 0.5).unwrap();
        let s = ising_ratio_stats(&p, 1, DEFAULT_BULK).unwrap();
        assert!(!s.warnings.is_empty());
        assert_eq!(s.sector_dim, sector_basis(6, 1).unwrap().dim());
    }
}
