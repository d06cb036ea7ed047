//! Multi-start EM for a two-component mixture, compared against the truth.
use mixcirc::eval::{adjusted_rand_index, align_to, class_error};
use mixcirc::mixture::{map_cluster, multi_start_fit, EmOptions};
use mixcirc::simulate::{builtin_scenario, generate_seeded};

fn main() -> mixcirc::Result<()> {
    let spec = builtin_scenario(1)?.with_n(1000).with_seed(42);
    let sample = generate_seeded(&spec)?;

    let fit = multi_start_fit(&sample.data, 2, 10, 7, &[], &EmOptions::default())?;
    println!("loglik {:.3}  BIC {:.3}  df {}", fit.loglik, fit.bic, fit.df);
    println!("{} EM iterations, converged: {}", fit.diagnostics.iterations, fit.diagnostics.converged);

    let (aligned, matching) = align_to(&fit.params(), &spec.params)?;
    for (est, truth) in aligned.components.iter().zip(&spec.params.components) {
        println!(
            "pi {:.3} ({:.3})  mu {:.3} ({:.3})  kappa {:.2} ({:.2})  beta {:.3?}",
            est.pi,
            truth.pi,
            est.mu.radians(),
            truth.mu.radians(),
            est.kappa.value(),
            truth.kappa.value(),
            est.coefficients
        );
    }
    let labels: Vec<usize> = map_cluster(&fit.responsibilities).into_iter().map(|l| matching.permutation[l]).collect();
    println!("ARI {:.4}  misclassification {:.4}", adjusted_rand_index(&labels, &sample.labels)?, class_error(&labels, &sample.labels)?);
    Ok(())
}
