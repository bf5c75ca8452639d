//! Type along the imaginary axis: sin πz has type π, and halving the zero
//! spacing doubles it.

use std::f64::consts::PI;

use expozeros::catalog::{integer_lattice, scaled_lattice};
use expozeros::criteria::type_bound;

fn main() -> expozeros::Result<()> {
    // magnitudes ascending, both signs
    let ys = [-1e2, 1e2, -1e3, 1e3];
    for (h, seq) in [(1.0, integer_lattice(1e4)?), (0.5, scaled_lattice(0.5, 1e4)?)] {
        let report = type_bound(&seq, h / 2.0, &ys, PI / h)?;
        for w in &report.windows {
            println!("h = {h}: y = {:>7} estimate {:.5}", w.lo, w.extremum);
        }
        println!("h = {h}: plateau {:.5} vs π/h = {:.5} -> {}", report.extremum_value, PI / h, report.verdict.as_str());
    }
    Ok(())
}
