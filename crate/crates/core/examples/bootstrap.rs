//! Parametric bootstrap standard errors and percentile intervals.
use mixcirc::bootstrap::{parametric_bootstrap, BootstrapOptions};
use mixcirc::mixture::{multi_start_fit, EmOptions};
use mixcirc::simulate::{builtin_scenario, generate_seeded};

fn main() -> mixcirc::Result<()> {
    let sample = generate_seeded(&builtin_scenario(1)?.with_n(500).with_seed(9))?;
    let fit = multi_start_fit(&sample.data, 2, 10, 1, &[], &EmOptions::default())?;
    let options = BootstrapOptions { replicates: 50, restarts: 3, seed: 17, ..Default::default() };
    let result = parametric_bootstrap(&fit, &sample.data, &options)?;
    println!("{} of {} replicates usable", result.replicates.len(), result.requested);
    println!("{:<8} {:>10} {:>10} {:>10} {:>10}", "param", "estimate", "se", "2.5%", "97.5%");
    for p in &result.parameters {
        println!("{:<8} {:>10.4} {:>10.4} {:>10.4} {:>10.4}", p.name, p.estimate, p.std_error, p.ci_low, p.ci_high);
    }
    Ok(())
}
