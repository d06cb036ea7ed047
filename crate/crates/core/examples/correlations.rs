//! Circular-circular, circular-linear and linear-linear correlations.
use mixcirc::cli::correlation_matrix;
use mixcirc::eval::{circ_circ_correlation, circ_linear_correlation};
use mixcirc::simulate::{builtin_scenario, generate_seeded};

fn main() -> mixcirc::Result<()> {
    let sample = generate_seeded(&builtin_scenario(1)?.with_n(500).with_seed(4))?;
    let theta = sample.data.response().to_vec();
    let x: Vec<f64> = sample.covariates.iter().map(|c| c.circular[0]).collect();
    let z: Vec<f64> = sample.covariates.iter().map(|c| c.linear[0]).collect();

    println!("corr(theta, x) = {:.4}", circ_circ_correlation(&theta, &x)?);
    println!("corr(theta, z) = {:.4}", circ_linear_correlation(&theta, &z)?);

    let names = ["theta", "x", "z"].map(String::from);
    let matrix = correlation_matrix(&names, &[true, true, false], &[theta, x, z])?;
    matrix.write_csv(std::io::stdout())
}
