//! Zeros α(a_k) = k for α(t) = t + c log(1 + t): the first integral of the
//! decomposition grows like log² x while the others stay bounded, so no
//! function bounded on the real axis has these zeros.

use expozeros::catalog::{alpha_roots, alpha_sequence, int_decomposition, AlphaSpec};
use expozeros::criteria::{classify, ClassifyOptions};

fn main() -> expozeros::Result<()> {
    let spec = AlphaSpec::new(1.0)?;
    let roots = alpha_roots(&spec, 5)?;
    println!("{}: first roots {roots:.6?}", spec.description);

    println!("{:>8} {:>10} {:>10} {:>10}", "x", "first", "second", "third");
    for x in [1e2, 1e3, 1e4] {
        let d = int_decomposition(&spec, x, 1e3 * x)?;
        println!("{x:>8} {:>10.4} {:>10.4} {:>10.4}", d.first, d.second, d.third);
    }
    println!("uniform floor for the second integral: {:?}", int_decomposition(&spec, 10.0, 100.0)?.second_floor);

    let seq = alpha_sequence(&spec, 10_000)?;
    let report = classify(&seq, &ClassifyOptions::default())?;
    println!(
        "B: {} (slope {:?} per octave), C: {}",
        report.b.verdict.as_str(),
        report.b.trend_slope,
        report.c.verdict.as_str()
    );
    Ok(())
}
