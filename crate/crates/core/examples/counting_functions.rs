//! Disc and square counts, Lindelöf sums, growth and sector densities, and the
//! exact step integral against a direct sum.

use expozeros::catalog::integer_lattice;
use expozeros::counting::{
    angular_density, count_square, growth_check, lindelof_sums, profile, step_integral,
};
use expozeros::Complex64;

fn main() -> expozeros::Result<()> {
    let seq = integer_lattice(1000.0)?;
    let origin = Complex64::new(0.0, 0.0);

    let p = profile(&seq, origin);
    for t in [0.5, 1.0, 10.0, 99.5] {
        println!("n(0, {t}) = {}", p.count_disc(t)?);
    }
    println!("square count at x = 0.5, t = 2: {}", count_square(&seq, Complex64::new(0.5, 0.0), 2.0)?);

    let trace = lindelof_sums(&seq, &[10.0, 100.0, 500.0, 1000.0])?;
    println!("Lindelöf sum {} (converged: {})", trace.final_value, trace.converged);

    let radii: Vec<f64> = (1..=8).map(|k| 10f64.powf(f64::from(k) / 3.0)).collect();
    let growth = growth_check(&seq, &radii)?;
    println!("sup n(0,t)/t = {:.4}, max annulus ratio = {:.4}", growth.linear_ratio_sup, growth.annulus_increment_max_ratio);

    let sector = angular_density(&seq, std::f64::consts::FRAC_PI_4, 1000.0)?;
    println!("sector densities right {:.4}, left {:.4}", sector.right, sector.left);

    // ∫_0^T [n(0,t) - n(x,t)]/t dt equals Σ (log|a - x| - log|a|) when no disc leaves the list
    let x = Complex64::new(0.5, 0.0);
    let exact = step_integral(&seq, origin, x, 0.0, 900.0)?;
    println!("step integral at x = 0.5 up to t = 900: {exact:.12}");
    Ok(())
}
