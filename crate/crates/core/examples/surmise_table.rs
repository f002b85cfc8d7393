//! Closed-form constants of the ratio surmise and of its large-N correction.
//!
//!     cargo run --example surmise_table

use level_ratios::ensembles::EnsembleKind;
use level_ratios::surmise::{
    integrated_means, theoretical_means, DysonIndex, RatioLaw, SurmiseConstants,
};

fn main() -> level_ratios::Result<()> {
    println!(
        "{:<6} {:>12} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
        "", "Z", "c", "C", "<r>_W", "<r~>_W", "<r>_fit", "<r~>_fit"
    );
    let p = theoretical_means(EnsembleKind::Poisson);
    println!(
        "{:<6} {:>12} {:>10} {:>10} {:>10} {:>10.6}",
        "P", "-", "-", "-", "inf", p.folded_surmise
    );
    for beta in DysonIndex::ALL {
        let k = SurmiseConstants::of(beta);
        println!(
            "{:<6} {:>12.6e} {:>10.6} {:>10.6} {:>10.6} {:>10.6} {:>10.4} {:>10.4}",
            format!("beta={}", beta.beta()),
            k.z,
            k.c,
            k.amplitude,
            k.mean_ratio_surmise,
            k.mean_folded_surmise,
            k.mean_ratio_fit,
            k.mean_folded_fit
        );
    }
    println!("\nmeans integrated from P_W + C dP:");
    for beta in DysonIndex::ALL {
        let (r, rt) = integrated_means(&RatioLaw::reference_fit(beta))?;
        println!(
            "  beta={}: <r> = {:.6}, <r~> = {rt:.6}",
            beta.beta(),
            r.value()
        );
    }
    Ok(())
}
