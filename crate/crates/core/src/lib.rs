//! Statistics of the ratio of consecutive level spacings.
//!
//! The ratio `r_n = s_n / s_{n-1}` of two neighbouring spacings needs no
//! unfolding, so it can be computed directly from any ordered spectrum.
//! This crate provides
//!
//! - [`spectrum`], [`histogram`], [`stats`]: ratio series, binning, means
//!   and Kolmogorov-Smirnov distances;
//! - [`surmise`], [`fit`]: the 3x3 surmise for Poisson/GOE/GUE/GSE, its
//!   one-parameter large-N correction and a closed-form amplitude fit;
//! - [`ensembles`], [`linalg`]: seeded Gaussian-ensemble sampling, a dense
//!   Hermitian eigensolver and parallel multi-realization sweeps;
//! - [`sine_kernel`]: the exact large-N GUE ratio law from the Fredholm
//!   determinant and resolvent of the sine kernel;
//! - [`ising`]: translation-sector spectra of the periodic Ising chain in
//!   transverse and longitudinal fields;
//! - [`io`], [`analyze`], [`cli`]: level files, tables and the command line.

pub mod analyze;
pub mod cli;
pub mod ensembles;
pub mod error;
pub mod fit;
pub mod histogram;
pub mod io;
pub mod ising;
pub mod linalg;
pub mod quadrature;
pub mod sine_kernel;
pub mod spectrum;
pub mod stats;
pub mod surmise;

pub use error::{Error, Result};
pub use spectrum::{RatioKind, RatioSeries, Spectrum};
pub use surmise::{DysonIndex, RatioLaw};
