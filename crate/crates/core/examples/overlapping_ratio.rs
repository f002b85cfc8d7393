//! Distribution of the overlapping ratio
//! r2 = (e[n+2] - e[n]) / (e[n+1] - e[n-1]) for Poisson and the three
//! Gaussian ensembles.
//!
//!     cargo run --release --example overlapping_ratio -- [N] [realizations]

use level_ratios::ensembles::{realization_spectrum, EnsembleKind, Sampler, SweepConfig};
use level_ratios::histogram::{uniform_edges, Histogram};
use level_ratios::spectrum::{fold_ratios, overlapping_ratios};

fn main() -> level_ratios::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().ok());
    let n = args.next().flatten().unwrap_or(200) as usize;
    let realizations = args.next().flatten().unwrap_or(300);
    let edges = uniform_edges(0.0, 4.0, 16)?;
    let mut columns = Vec::new();
    for kind in EnsembleKind::ALL {
        let config = SweepConfig::new(kind)
            .size(n)
            .realizations(realizations)
            .seed(11)
            .sampler(Sampler::Tridiagonal);
        let mut hist = Histogram::empty(edges.clone())?;
        let mut folded_sum = 0.0;
        let mut count = 0usize;
        for i in 0..realizations {
            let r2 = overlapping_ratios(&realization_spectrum(&config, i)?)?;
            hist.extend(r2.values.iter().copied());
            let f = fold_ratios(&r2)?;
            folded_sum += f.values.iter().sum::<f64>();
            count += f.len();
        }
        println!(
            "{:<8} <min(r2, 1/r2)> = {:.4}",
            kind.to_string(),
            folded_sum / count as f64
        );
        columns.push(hist.densities());
    }
    println!(
        "\n{:>6} {:>8} {:>8} {:>8} {:>8}",
        "r2", "poisson", "goe", "gue", "gse"
    );
    for (i, w) in edges.windows(2).enumerate() {
        print!("{:>6.2}", 0.5 * (w[0] + w[1]));
        for c in &columns {
            print!(" {:>8.4}", c[i]);
        }
        println!();
    }
    Ok(())
}
