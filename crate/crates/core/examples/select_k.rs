//! Choosing the number of components by BIC.
use mixcirc::mixture::{bic_scan, EmOptions};
use mixcirc::simulate::{builtin_scenario, generate_seeded};

fn main() -> mixcirc::Result<()> {
    let sample = generate_seeded(&builtin_scenario(1)?.with_n(1000).with_seed(3))?;
    let scan = bic_scan(&sample.data, &[1, 2, 3], 10, 11, &EmOptions::default())?;
    println!("{:>2} {:>12} {:>4} {:>12}", "K", "loglik", "df", "BIC");
    for row in &scan.rows {
        match (row.loglik, row.bic) {
            (Some(ll), Some(bic)) => println!("{:>2} {ll:>12.3} {:>4} {bic:>12.3}", row.k, row.df),
            _ => println!("{:>2} failed: {}", row.k, row.error.as_deref().unwrap_or("")),
        }
    }
    println!("selected K = {}", scan.selected_k);
    Ok(())
}
