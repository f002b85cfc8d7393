//! Multi-realization sweep of a Gaussian ensemble (or Poisson levels):
//! mean ratios, the fitted correction amplitude and the folded histogram.
//!
//! cargo run --release --example ensemble_sweep -- [goe|gue|gse|poisson] [N] [realizations] [dense|tridiagonal]

use std::time::Instant;

use level_ratios::ensembles::{run_realizations, EnsembleKind, Sampler, SweepConfig};
use level_ratios::surmise::theoretical_means;

fn main() -> level_ratios::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let kind: EnsembleKind = args.first().map_or(Ok(EnsembleKind::Gue), |s| s.parse())?;
    let size: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let realizations: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(200);
    let sampler: Sampler = args.get(3).map_or(Ok(Sampler::Dense), |s| s.parse())?;

    let config = SweepConfig::new(kind)
        .size(size)
        .realizations(realizations)
        .sampler(sampler)
        .seed(2013);
    let start = Instant::now();
    let result = run_realizations(&config)?;
    let elapsed = start.elapsed();

    let folded = result.mean_folded.expect("ratios collected");
    let reference = theoretical_means(kind);
    println!(
        "{kind} N={size} x{realizations} ({sampler:?}): {} ratios in {elapsed:.1?}",
        folded.count
    );
    println!(
        "  <r~> = {:.5} ± {:.5}   (surmise {:.5}, large-N reference {})",
        folded.mean,
        folded.stderr,
        reference.folded_surmise,
        reference
            .folded_fit
            .map_or("-".into(), |m| format!("{m:.4}"))
    );
    if let Some(fit) = result.amplitude {
        println!("  fitted C = {:.4} ± {:.4}", fit.amplitude, fit.stderr);
    }
    let h = &result.folded_histogram;
    for (i, d) in h.densities().iter().enumerate().step_by(5) {
        let (lo, hi) = h.bin(i);
        println!(
            "  [{lo:.2}, {hi:.2})  {d:.4}  {}",
            "#".repeat((d * 20.0) as usize)
        );
    }
    Ok(())
}
