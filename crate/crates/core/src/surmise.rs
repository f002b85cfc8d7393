//! Closed-form reference laws for the spacing ratio `r = s_n / s_{n-1}`.
//!
//! The 3x3 Gaussian-ensemble surmise is
//!
//! ```text
//! P_W(r) = (r + r^2)^β / (Z_β (1 + r + r^2)^(1 + 3β/2))
//! ```
//!
//! and the one-parameter large-N correction is
//!
//! ```text
//! δP(r) = C / (1 + r)^2 [ (r + 1/r)^-β - c_β (r + 1/r)^-(β+1) ]
//! ```
//!
//! where `c_β` makes `δP` integrate to zero. Every law here satisfies
//! `P(r) = P(1/r) / r^2`, which the CDF uses to fold `r > 1` back onto
//! `[0, 1]`.

use std::f64::consts::{LN_2, PI};

use crate::ensembles::EnsembleKind;
use crate::error::{Error, Result};
use crate::quadrature;

/// Dyson index of a Gaussian ensemble.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DysonIndex {
    Orthogonal,
    Unitary,
    Symplectic,
}

impl DysonIndex {
    pub const ALL: [DysonIndex; 3] = [Self::Orthogonal, Self::Unitary, Self::Symplectic];

    pub fn beta(self) -> u32 {
        match self {
            Self::Orthogonal => 1,
            Self::Unitary => 2,
            Self::Symplectic => 4,
        }
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.beta())
    }

    pub fn constants(self) -> SurmiseConstants {
        SurmiseConstants::of(self)
    }
}

impl TryFrom<u32> for DysonIndex {
    type Error = Error;

    fn try_from(beta: u32) -> Result<Self> {
        match beta {
            1 => Ok(Self::Orthogonal),
            2 => Ok(Self::Unitary),
            4 => Ok(Self::Symplectic),
            other => Err(Error::UnsupportedBeta(other)),
        }
    }
}

/// Per-ensemble constants of the ratio surmise and its correction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurmiseConstants {
    pub beta: DysonIndex,
    /// Normalization of `P_W(r)`.
    pub z: f64,
    /// Balance constant of the correction term.
    pub c: f64,
    /// Reference large-N amplitude of the correction.
    pub amplitude: f64,
    pub mean_ratio_surmise: f64,
    pub mean_folded_surmise: f64,
    /// Large-N means measured from numerics (reference values).
    pub mean_ratio_fit: f64,
    pub mean_folded_fit: f64,
}

impl SurmiseConstants {
    pub fn of(beta: DysonIndex) -> Self {
        let s3 = 3f64.sqrt();
        match beta {
            DysonIndex::Orthogonal => Self {
                beta,
                z: 8.0 / 27.0,
                c: 2.0 * (PI - 2.0) / (4.0 - PI),
                amplitude: 0.233378,
                mean_ratio_surmise: 7.0 / 4.0,
                mean_folded_surmise: 4.0 - 2.0 * s3,
                mean_ratio_fit: 1.7781,
                mean_folded_fit: 0.5307,
            },
            DysonIndex::Unitary => Self {
                beta,
                z: 4.0 * PI / (81.0 * s3),
                c: 4.0 * (4.0 - PI) / (3.0 * PI - 8.0),
                amplitude: 0.578846,
                mean_ratio_surmise: 27.0 * s3 / (8.0 * PI) - 0.5,
                mean_folded_surmise: 2.0 * s3 / PI - 0.5,
                mean_ratio_fit: 1.3684,
                mean_folded_fit: 0.5996,
            },
            DysonIndex::Symplectic => Self {
                beta,
                z: 4.0 * PI / (729.0 * s3),
                c: 8.0 * (32.0 - 9.0 * PI) / (45.0 * PI - 128.0),
                amplitude: 3.60123,
                mean_ratio_surmise: 243.0 * s3 / (80.0 * PI) - 0.5,
                mean_folded_surmise: 32.0 * s3 / (15.0 * PI) - 0.5,
                mean_ratio_fit: 1.1769,
                mean_folded_fit: 0.6744,
            },
        }
    }
}

fn check_r(r: f64) -> Result<()> {
    if r >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("r must be >= 0, got {r}")))
    }
}

/// `P_W(r)` without argument checks.
#[inline]
pub fn surmise_density(beta: DysonIndex, r: f64) -> f64 {
    let q = 1.0 + r + r * r;
    let b = beta.as_f64();
    // ((r + r^2) / q)^β / q^(1 + β/2) stays finite for huge r
    ((r + r * r) / q).powi(beta.beta() as i32) / q.powf(1.0 + 0.5 * b) / beta.constants().z
}

pub fn surmise_pdf(beta: DysonIndex, r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(surmise_density(beta, r))
}

pub fn poisson_pdf(r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(poisson_density(r))
}

#[inline]
pub fn poisson_density(r: f64) -> f64 {
    1.0 / ((1.0 + r) * (1.0 + r))
}

/// Shape of the correction term for unit amplitude. Uses
/// `1 / (r + 1/r) = r / (1 + r^2)` so that `r = 0` gives the limit 0.
#[inline]
pub fn correction_shape(beta: DysonIndex, r: f64) -> f64 {
    let x = r / (1.0 + r * r);
    let b = beta.beta() as i32;
    let xb = x.powi(b);
    (xb - beta.constants().c * xb * x) / ((1.0 + r) * (1.0 + r))
}

pub fn correction_pdf(beta: DysonIndex, amplitude: f64, r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(amplitude * correction_shape(beta, r))
}

pub fn fitted_pdf(beta: DysonIndex, amplitude: f64, r: f64) -> Result<f64> {
    check_r(r)?;
    Ok(surmise_density(beta, r) + amplitude * correction_shape(beta, r))
}

/// A reference ratio law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RatioLaw {
    Poisson,
    Surmise(DysonIndex),
    /// Surmise plus correction with the given amplitude.
    Fitted(DysonIndex, f64),
}

impl RatioLaw {
    pub fn reference_fit(beta: DysonIndex) -> Self {
        Self::Fitted(beta, beta.constants().amplitude)
    }

    pub fn name(&self) -> String {
        match self {
            Self::Poisson => "Poisson".into(),
            Self::Surmise(b) => ensemble_name(*b).into(),
            Self::Fitted(b, c) => format!("{}+fit(C={c})", ensemble_name(*b)),
        }
    }

    /// Density at `r >= 0`, unchecked.
    pub fn density(&self, r: f64) -> f64 {
        match *self {
            Self::Poisson => poisson_density(r),
            Self::Surmise(b) => surmise_density(b, r),
            Self::Fitted(b, c) => surmise_density(b, r) + c * correction_shape(b, r),
        }
    }

    pub fn pdf(&self, r: f64) -> Result<f64> {
        check_r(r)?;
        Ok(self.density(r))
    }

    /// `P(r <= x)`. Values beyond 1 reuse `F(x) = 1 - F(1/x)`.
    pub fn cdf(&self, r: f64) -> Result<f64> {
        check_r(r)?;
        if r == f64::INFINITY {
            return Ok(1.0);
        }
        if let Self::Poisson = self {
            return Ok(r / (1.0 + r));
        }
        if r > 1.0 {
            return Ok(1.0 - self.cdf_unit(1.0 / r)?);
        }
        self.cdf_unit(r)
    }

    fn cdf_unit(&self, r: f64) -> Result<f64> {
        quadrature::integrate(|x| self.density(x), 0.0, r, 1e-10)
    }

    /// CDF of the folded ratio `min(r, 1/r)`: `2 F(x)` on `[0, 1]`.
    pub fn folded_cdf(&self, x: f64) -> Result<f64> {
        folded_range(x)?;
        Ok((2.0 * self.cdf(x)?).min(1.0))
    }
}

pub(crate) fn ensemble_name(beta: DysonIndex) -> &'static str {
    match beta {
        DysonIndex::Orthogonal => "GOE",
        DysonIndex::Unitary => "GUE",
        DysonIndex::Symplectic => "GSE",
    }
}

fn folded_range(x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "folded ratio must lie in [0, 1], got {x}"
        )))
    }
}

/// Density of `min(r, 1/r)`: `2 P(x)` on `[0, 1]`.
pub fn folded_pdf(law: &RatioLaw, rtilde: f64) -> Result<f64> {
    folded_range(rtilde)?;
    Ok(2.0 * law.density(rtilde))
}

pub fn reference_cdf(law: &RatioLaw, r: f64) -> Result<f64> {
    law.cdf(r)
}

/// A mean that may diverge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Moment {
    Finite(f64),
    Divergent,
}

impl Moment {
    pub fn value(self) -> f64 {
        match self {
            Self::Finite(v) => v,
            Self::Divergent => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TheoreticalMeans {
    pub ratio_surmise: Moment,
    pub folded_surmise: f64,
    /// `None` where no large-N fit exists (Poisson is already exact).
    pub ratio_fit: Option<f64>,
    pub folded_fit: Option<f64>,
}

pub fn theoretical_means(ensemble: EnsembleKind) -> TheoreticalMeans {
    match ensemble.dyson() {
        None => TheoreticalMeans {
            ratio_surmise: Moment::Divergent,
            folded_surmise: 2.0 * LN_2 - 1.0,
            ratio_fit: None,
            folded_fit: None,
        },
        Some(beta) => {
            let k = beta.constants();
            TheoreticalMeans {
                ratio_surmise: Moment::Finite(k.mean_ratio_surmise),
                folded_surmise: k.mean_folded_surmise,
                ratio_fit: Some(k.mean_ratio_fit),
                folded_fit: Some(k.mean_folded_fit),
            }
        }
    }
}

/// `⟨r⟩` and `⟨min(r, 1/r)⟩` of a law by quadrature. The first uses
/// `∫_1^∞ r P(r) dr = ∫_0^1 P(u) / u du`.
pub fn integrated_means(law: &RatioLaw) -> Result<(Moment, f64)> {
    let folded = 2.0 * quadrature::integrate(|r| r * law.density(r), 0.0, 1.0, 1e-12)?;
    let ratio = match law {
        RatioLaw::Poisson => Moment::Divergent,
        _ => {
            let lower = quadrature::integrate(|r| r * law.density(r), 0.0, 1.0, 1e-12)?;
            let upper = quadrature::integrate(
                |u| if u == 0.0 { 0.0 } else { law.density(u) / u },
                0.0,
                1.0,
                1e-12,
            )?;
            Moment::Finite(lower + upper)
        }
    };
    Ok((ratio, folded))
}

/// Normalization constants `(a_β, b_β)` of `P_W(s) = a s^β exp(-b s^2)`
/// fixed by unit norm and unit mean.
pub fn spacing_surmise_constants(beta: DysonIndex) -> (f64, f64) {
    let b = beta.as_f64();
    // ∫ s^k e^{-b s^2} ds = Γ((k+1)/2) / (2 b^{(k+1)/2})
    let g1 = gamma_half(beta.beta() + 1);
    let g2 = gamma_half(beta.beta() + 2);
    let bb = (g2 / g1).powi(2);
    let a = 2.0 * bb.powf(0.5 * (b + 1.0)) / g1;
    (a, bb)
}

/// `Γ(n / 2)` for positive integer `n`.
fn gamma_half(n: u32) -> f64 {
    let mut g = if n % 2 == 0 { 1.0 } else { PI.sqrt() };
    let mut k = if n % 2 == 0 { 2 } else { 1 };
    while k < n {
        g *= 0.5 * k as f64;
        k += 2;
    }
    g
}

pub fn spacing_surmise_pdf(beta: DysonIndex, s: f64) -> Result<f64> {
    if !(s >= 0.0) {
        return Err(Error::InvalidArgument(format!("s must be >= 0, got {s}")));
    }
    let (a, b) = spacing_surmise_constants(beta);
    Ok(a * s.powi(beta.beta() as i32) * (-b * s * s).exp())
}

/// Folded CDF of a law tabulated on `[0, 1]` for fast repeated evaluation,
/// with cubic Hermite interpolation between knots.
#[derive(Debug, Clone)]
pub struct FoldedCdfTable {
    law: RatioLaw,
    cdf: Vec<f64>,
}

impl FoldedCdfTable {
    pub fn new(law: RatioLaw, intervals: usize) -> Self {
        let intervals = intervals.max(1);
        let h = 1.0 / intervals as f64;
        let (x, w) = crate::quadrature::gauss_legendre(8);
        let mut cdf = Vec::with_capacity(intervals + 1);
        let mut acc = 0.0;
        cdf.push(0.0);
        for i in 0..intervals {
            let c = (i as f64 + 0.5) * h;
            acc += x
                .iter()
                .zip(&w)
                .map(|(xi, wi)| 0.5 * h * wi * 2.0 * law.density(c + 0.5 * h * xi))
                .sum::<f64>();
            cdf.push(acc);
        }
        Self { law, cdf }
    }

    /// Evaluates at `x`, clamped to `[0, 1]`.
    pub fn eval(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let n = self.cdf.len() - 1;
        let h = 1.0 / n as f64;
        let i = ((x / h) as usize).min(n - 1);
        let u = x / h - i as f64;
        let (f0, f1) = (self.cdf[i], self.cdf[i + 1]);
        let d0 = 2.0 * self.law.density(i as f64 * h) * h;
        let d1 = 2.0 * self.law.density((i + 1) as f64 * h) * h;
        let (u2, u3) = (u * u, u * u * u);
        let v = (2.0 * u3 - 3.0 * u2 + 1.0) * f0
            + (u3 - 2.0 * u2 + u) * d0
            + (-2.0 * u3 + 3.0 * u2) * f1
            + (u3 - u2) * d1;
        v.clamp(0.0, 1.0)
    }
}
