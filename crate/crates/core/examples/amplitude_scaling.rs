//! Size dependence of the correction amplitude for GUE.
//!
//! The amplitude is fitted at each `N` against the surmise; its excess over
//! the large-N reference amplitude should fall off as `1/N`.
//!
//! cargo run --release --example amplitude_scaling -- [ratios per size] [bulk fraction]

use level_ratios::ensembles::{
    amplitude_scaling_curve, AmplitudeBaseline, EnsembleKind, Sampler, SweepConfig,
};
use level_ratios::surmise::{DysonIndex, SurmiseConstants};

fn main() -> level_ratios::Result<()> {
    let ratios: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1_000_000);
    let bulk: f64 = std::env::args()
        .nth(2)
        .and_then(|s| s.parse().ok())
        .unwrap_or(1.0);
    let sizes = [10, 20, 40, 80];
    let base = SweepConfig::new(EnsembleKind::Gue)
        .sampler(Sampler::Tridiagonal)
        .bulk(bulk)
        .seed(7);
    let per_size = |n: usize| ratios / ((n as f64 * bulk).ceil() as u64 - 2);

    let c_ref = SurmiseConstants::of(DysonIndex::Unitary).amplitude;
    let curve = amplitude_scaling_curve(&base, &sizes, per_size, AmplitudeBaseline::LargeN)?;
    println!("C_N is the fitted amplitude minus C_ref = {c_ref}");
    for p in &curve.points {
        println!(
            "  N={:3}  fitted {:.4}  C_N = {:+.4} ± {:.4}   N C_N = {:+.3} ± {:.3}   ({} ratios)",
            p.size,
            p.amplitude + c_ref,
            p.amplitude,
            p.stderr,
            p.size as f64 * p.amplitude,
            p.size as f64 * p.stderr,
            p.ratios
        );
    }
    if let Some(s) = curve.log_slope {
        println!("slope of log|C_N| against log N: {s:.3}");
    }
    Ok(())
}
