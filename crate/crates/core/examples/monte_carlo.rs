//! A small Monte Carlo study: parameter RMSE and clustering accuracy by sample size.
use mixcirc::mixture::EmOptions;
use mixcirc::simulate::{builtin_scenario, monte_carlo};

fn main() -> mixcirc::Result<()> {
    let scenario = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(1u8);
    let report = monte_carlo(&builtin_scenario(scenario)?, &[250, 500], 20, 5, 2024, &EmOptions::default())?;
    println!("scenario {}", report.scenario.name);
    for r in &report.results {
        println!("n = {} ({} replicates, {} failed)", r.n, r.replications, r.failures);
        for (name, value) in &r.rmse.entries {
            println!("  rmse {name:<8} {value:.4}");
        }
        println!("  ARI {:.4} ± {:.4}  misclassification {:.4} ± {:.4}", r.ari_mean, r.ari_sd, r.class_error_mean, r.class_error_sd);
    }
    report.write_csv(std::io::stdout())
}
