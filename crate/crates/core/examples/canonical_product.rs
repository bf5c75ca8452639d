//! Canonical product in log space, the counting-side identity, the derivative
//! at a multiple zero, and the Jensen combination.

use expozeros::product::{
    derivative_at_multiple_zero, evaluate_product, evaluate_product_with, jensen_identity_check,
    log_modulus_via_counting,
};
use expozeros::{Complex64, Zero, ZeroSequence};

fn main() -> expozeros::Result<()> {
    let seq = ZeroSequence::new(
        [Zero::new(Complex64::new(1.0, 0.0), 2), Zero::simple(-1.0, 0.0), Zero::simple(0.0, 3.0)],
        0.0,
    )?;
    let z = Complex64::new(0.4, -1.2);
    let product = evaluate_product(&seq, z, 10.0)?;
    let counting = log_modulus_via_counting(&seq, z)?;
    println!("log|g(z)|: product {:.15}, counting {:.15}", product.value.log_magnitude, counting);
    println!("arg g(z) = {:.15}", product.value.argument);

    // (1 - z)^2 (1 + z) (1 - z/3i): g''(1)/2 = 2·|1 - 1/(3i)|
    let d = derivative_at_multiple_zero(&seq, Complex64::new(1.0, 0.0))?;
    println!("log|g''(1)/2!| = {d:.15}");

    let jensen = jensen_identity_check(&seq, Complex64::new(0.2, 0.1), 1 << 12)?;
    println!("Jensen: left {:.12}, right {:.12}, residual {:.2e}", jensen.left, jensen.right, jensen.residual);

    // a truncated lattice: the tail estimate is reported, and applied on request
    let lattice = expozeros::catalog::integer_lattice(200.0)?;
    let w = Complex64::new(0.5, 0.5);
    let plain = evaluate_product(&lattice, w, 50.0)?;
    let corrected = evaluate_product_with(&lattice, w, 50.0, true)?;
    println!("tail estimate {:?}, applied: {}", plain.tail_estimate, corrected.tail_applied);
    Ok(())
}
