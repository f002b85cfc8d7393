//! Riemann zeros as a spectrum: generate the first zeros with the
//! Riemann–Siegel formula and compare their ratios with the GUE law.
//!
//!     cargo run --release --example riemann_zeros -- [count] [table.txt]

#[path = "../tests/support/riemann.rs"]
mod riemann;

use level_ratios::analyze::{analyze_spectrum, AnalyzeOptions};
use level_ratios::Spectrum;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args
        .next()
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(20_000);
    let zeros = riemann::RiemannSiegel::new().zeros(count);
    if let Some(path) = args.next() {
        riemann::write_zero_table(path.as_ref(), &zeros)?;
        println!("wrote {path} (read it back with `levelratio analyze --levels zero-table`)");
    }
    println!("first zeros: {:.6?}", &zeros[..5.min(zeros.len())]);
    let last = zeros[zeros.len() - 1];
    println!(
        "zero #{count} at {last:.6}; smooth count there {:.2}",
        riemann::smooth_count(last)
    );
    let report = analyze_spectrum(&Spectrum::new(zeros)?, &AnalyzeOptions::default())?;
    println!(
        "<r~> = {:.4} ± {:.4}",
        report.mean_folded.mean, report.mean_folded.stderr
    );
    for (law, d) in &report.ks {
        println!("KS to {:<12} {d:.4}", law.name());
    }
    println!("closest law: {}", report.best_law().name());
    Ok(())
}
