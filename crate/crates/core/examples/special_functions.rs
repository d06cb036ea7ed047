//! Bessel functions, the mean resultant length A(κ) and its inverse.
use mixcirc::special::{bessel_i0, bessel_i1, log_bessel_i0, ratio_a, ratio_a_inverse, Concentration};

fn main() -> mixcirc::Result<()> {
    println!("{:>8} {:>14} {:>14} {:>12} {:>10}", "x", "I0", "I1", "log I0", "A(x)");
    for x in [0.0, 0.5, 1.0, 5.0, 30.0, 100.0] {
        let a = ratio_a(Concentration::new(x)?);
        println!("{x:>8} {:>14.6e} {:>14.6e} {:>12.6} {a:>10.6}", bessel_i0(x)?, bessel_i1(x)?, log_bessel_i0(x)?);
    }
    for r in [0.1, 0.5, 0.9, 0.99] {
        println!("A⁻¹({r}) = {:.6}", ratio_a_inverse(r)?.value());
    }
    Ok(())
}
