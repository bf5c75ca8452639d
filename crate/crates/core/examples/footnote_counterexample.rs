//! Negative zeros with n(r) = ⌊r / log² r⌋: log|f(x)| stays above 1 + x/(2 log x),
//! so the Cartwright integral diverges, yet the counting conditions hold.

use expozeros::catalog::{footnote_count_function, footnote_sequence};
use expozeros::counting::profile;
use expozeros::criteria::{classify, ClassifyOptions};
use expozeros::product::evaluate_product;
use expozeros::Complex64;

fn main() -> expozeros::Result<()> {
    let radius = 1e6;
    let seq = footnote_sequence(radius)?;
    println!("{} zeros, first at {}", seq.len(), seq.real_zeros().last().copied().unwrap_or_default());

    let counts = profile(&seq, Complex64::new(0.0, 0.0));
    for r in [100.0, 1000.0, 1e5] {
        println!("n({r}) = {}, ⌊r/log²r⌋ = {}", counts.count_disc(r)?, footnote_count_function(r).floor());
    }

    println!("{:>10} {:>12} {:>12}", "x", "log|f(x)|", "bound");
    // truncation only lowers log|f|; at R = 1e6 the bound stays visible up to x ~ 1e3
    for x in [std::f64::consts::E.powi(3), 1e2, 1e3] {
        let value = evaluate_product(&seq, Complex64::new(x, 0.0), radius)?.value.log_magnitude;
        println!("{x:>10.3} {value:>12.4} {:>12.4}", 1.0 + x / (2.0 * x.ln()));
    }

    let report = classify(&seq, &ClassifyOptions::default())?;
    println!("C: {} (mass slope {:?})", report.c.verdict.as_str(), report.c.mass_slope);
    println!("B: {}, D: {}", report.b.verdict.as_str(), report.d.verdict.as_str());
    Ok(())
}
