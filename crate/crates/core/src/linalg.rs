use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Modified Gram–Schmidt over the (optionally weighted) columns of a
/// row-major `n × d` matrix; reports columns that are numerically in the span
/// of the preceding ones.
pub(crate) fn check_column_rank(design: &[f64], weights: Option<&[f64]>, d: usize) -> Result<()> {
    let n = if d == 0 { 0 } else { design.len() / d };
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d);
    let mut dependent = Vec::new();
    for j in 0..d {
        let mut col: Vec<f64> = (0..n)
            .map(|i| {
                let w = weights.map_or(1.0, |w| w[i].max(0.0).sqrt());
                w * design[i * d + j]
            })
            .collect();
        let norm0 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        for q in &basis {
            let proj: f64 = col.iter().zip(q).map(|(a, b)| a * b).sum();
            col.iter_mut().zip(q).for_each(|(a, b)| *a -= proj * b);
        }
        let norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm0 == 0.0 || norm <= 1e-10 * norm0 {
            dependent.push(j);
        } else {
            col.iter_mut().for_each(|v| *v /= norm);
            basis.push(col);
        }
    }
    if dependent.is_empty() {
        Ok(())
    } else {
        Err(Error::Design {
            reason: "design is rank deficient".into(),
            columns: dependent,
        })
    }
}

/// Solves `(A + τI) x = b` for symmetric `A`, increasing `τ` by ×10 from
/// `1e-8·scale` until a Cholesky factorization exists. Returns the solution
/// and whether any ridge was added.
pub(crate) fn solve_spd_with_ridge(a: &DMatrix<f64>, b: &DVector<f64>) -> Option<(DVector<f64>, bool)> {
    if let Some(chol) = a.clone().cholesky() {
        let x = chol.solve(b);
        if x.iter().all(|v| v.is_finite()) {
            return Some((x, false));
        }
    }
    let scale = a.diagonal().iter().fold(1.0_f64, |m, v| m.max(v.abs()));
    let mut tau = 1e-8 * scale;
    for _ in 0..40 {
        let mut reg = a.clone();
        for i in 0..reg.nrows() {
            reg[(i, i)] += tau;
        }
        if let Some(chol) = reg.cholesky() {
            let x = chol.solve(b);
            if x.iter().all(|v| v.is_finite()) {
                return Some((x, true));
            }
        }
        tau *= 10.0;
    }
    None
}
