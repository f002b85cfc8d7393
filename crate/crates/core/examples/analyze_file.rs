//! Ratio statistics of a level file, with no unfolding.
//!
//!     cargo run --example analyze_file -- [levels.txt]
//!
//! Without an argument a GOE spectrum is written to a temporary file first,
//! with its density deliberately distorted by a nonlinear map.

use std::fs;

use level_ratios::analyze::{analyze_spectrum, AnalyzeOptions};
use level_ratios::ensembles::{hermitian_eigenvalues, sample_matrix, EnsembleKind};
use level_ratios::io::{read_levels, LevelFile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = match std::env::args().nth(1) {
        Some(p) => p.into(),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            let mut body = String::from("# GOE levels, N = 1500, through e -> e^3 + 40 e\n");
            let e = hermitian_eigenvalues(&sample_matrix(EnsembleKind::Goe, 1500, &mut rng)?)?;
            for x in e.levels() {
                body += &format!("{}\n", x.powi(3) + 40.0 * x);
            }
            let path = std::env::temp_dir().join("goe_levels.txt");
            fs::write(&path, body)?;
            path
        }
    };
    let loaded = read_levels(&LevelFile::new(&path))?;
    if loaded.reordered {
        println!("note: levels were sorted");
    }
    let options = AnalyzeOptions {
        bulk_fraction: 0.8,
        ..AnalyzeOptions::default()
    };
    let report = analyze_spectrum(&loaded.spectrum, &options)?;
    println!("{}: {} levels in the bulk", path.display(), report.levels);
    println!(
        "<r~> = {:.4} ± {:.4}   <r> = {:.3} (heavy tail)",
        report.mean_folded.mean, report.mean_folded.stderr, report.mean_ratio.mean
    );
    for (law, d) in &report.ks {
        println!("  KS to {:<8} {d:.4}", law.name());
    }
    println!("closest law: {}", report.best_law().name());
    Ok(())
}
