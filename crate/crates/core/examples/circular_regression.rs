//! Single-component circular regression on simulated data.
use mixcirc::regression::{fit_circreg, RegressionOptions};
use mixcirc::rng::stream;
use mixcirc::simulate::{builtin_scenario, generate};

fn main() -> mixcirc::Result<()> {
    let mut spec = builtin_scenario(1)?.with_n(500);
    spec.params.components.truncate(1);
    spec.params.components[0].pi = 1.0;
    let sample = generate(&spec, &mut stream(1, 0))?;

    let (fit, diag) = fit_circreg(&sample.data, None, &RegressionOptions::default())?;
    let truth = &spec.params.components[0];
    println!("converged after {} iterations, loglik {:.4}", diag.iterations, diag.final_loglik);
    println!("mu     {:.4}  (true {:.4})", fit.mu.radians(), truth.mu.radians());
    println!("kappa  {:.4}  (true {:.4})", fit.kappa.value(), truth.kappa.value());
    println!("beta   {:.4?}", fit.coefficients);
    println!("true   {:.4?}", truth.coefficients);
    Ok(())
}
