//! Fitting the correction amplitude to a histogram, from a sampled sweep
//! or from a CSV written by `levelratio sample`.
//!
//!     cargo run --release --example fit_histogram -- [histogram.csv] [goe|gue|gse]

use level_ratios::ensembles::{run_realizations, EnsembleKind, Sampler, SweepConfig};
use level_ratios::fit::fit_amplitude;
use level_ratios::io::{histogram_from_table, read_table};
use level_ratios::surmise::SurmiseConstants;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let file = args.next();
    let kind: EnsembleKind = args.next().as_deref().unwrap_or("gue").parse()?;
    let beta = kind.dyson().ok_or("pick goe, gue or gse")?;
    let hist = match file {
        Some(path) => histogram_from_table(&read_table(path.as_ref())?)?,
        None => {
            let config = SweepConfig::new(kind)
                .size(400)
                .realizations(1000)
                .seed(3)
                .sampler(Sampler::Tridiagonal);
            run_realizations(&config)?.ratio_histogram
        }
    };
    let fit = fit_amplitude(&hist, beta)?;
    println!(
        "{} ratios in {} bins: C = {:.4} ± {:.4} (large-N value {})",
        hist.total(),
        fit.bins_used,
        fit.amplitude,
        fit.stderr,
        SurmiseConstants::of(beta).amplitude
    );
    Ok(())
}
