//! Classify the reference lattices. The zeros of cos πz lie in every class;
//! those of sin πz / πz are in B but not in D.

use expozeros::catalog::{integer_lattice, shifted_lattice};
use expozeros::criteria::{classify, ClassifyOptions};

fn main() -> expozeros::Result<()> {
    for seq in [shifted_lattice(0.5, 4096.0)?, integer_lattice(4096.0)?] {
        let report = classify(&seq, &ClassifyOptions::default())?;
        println!("{}", seq.provenance());
        for r in [&report.c, &report.b, &report.d] {
            println!(
                "  {:>2}: {:<18} extremum {:>10.4} at {:?}, slope {:?}",
                r.criterion.as_str(),
                r.verdict.as_str(),
                r.extremum_value,
                r.witness,
                r.trend_slope
            );
        }
        if !report.artifacts.is_empty() {
            println!("  artifacts: {:?}", report.artifacts);
        }
        for a in &report.angular {
            println!("  density at α = {:.4}: {:.4} / {:.4}", a.alpha, a.right, a.left);
        }
    }
    Ok(())
}
