//! Large-N GUE ratio density from the sine kernel, compared with the
//! surmise and its one-parameter correction.
//!
//! cargo run --release --example exact_gue [points]

use std::time::Instant;

use level_ratios::sine_kernel::{exact_ratio_pdf, fredholm_det, ExactGueConfig};
use level_ratios::surmise::{fitted_pdf, surmise_density, DysonIndex, SurmiseConstants};

fn main() -> level_ratios::Result<()> {
    let points: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(100);
    let grid: Vec<f64> = (0..points)
        .map(|i| 0.05 + (5.0 - 0.05) * i as f64 / (points - 1) as f64)
        .collect();

    let d40 = fredholm_det(2.0, 40)?;
    let d60 = fredholm_det(2.0, 60)?;
    println!("det(1-K) on [-2, 2]: m=40 {d40:.12e}, m=60 {d60:.12e}");

    let start = Instant::now();
    let table = exact_ratio_pdf(&grid, &ExactGueConfig::default())?;
    let elapsed = start.elapsed();

    let beta = DysonIndex::Unitary;
    let c = SurmiseConstants::of(beta).amplitude;
    println!(
        "{:>8} {:>12} {:>12} {:>12}",
        "r", "P_exact", "-P_W", "-P_fit"
    );
    let mut worst = 0.0f64;
    for (&r, &p) in table.r.iter().zip(&table.density) {
        let fit = fitted_pdf(beta, c, r)?;
        worst = worst.max((p - fit).abs());
        println!(
            "{r:8.4} {p:12.8} {:12.8} {:12.8}",
            p - surmise_density(beta, r),
            p - fit
        );
    }
    println!(
        "raw normalization {:.8}, clipped {}, max |P - P_fit| = {worst:.5}, {:.1?}",
        table.raw_norm, table.clipped, elapsed
    );
    Ok(())
}
