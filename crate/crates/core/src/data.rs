//! Response angles paired with the expanded covariate design.

use serde::{Deserialize, Serialize};

use crate::circular::{expand_into, wrap, CovariateRow};
use crate::error::{Error, Result};

/// `n` responses with their expanded design rows stored row-major.
///
/// Column layout per row: `(cos x₁, sin x₁, …, cos x_q, sin x_q, z₁, …, z_p)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    response: Vec<f64>,
    design: Vec<f64>,
    n_circular: usize,
    n_linear: usize,
}

impl Dataset {
    pub fn new(response: Vec<f64>, rows: &[CovariateRow]) -> Result<Self> {
        if response.len() != rows.len() {
            return Err(Error::domain(format!(
                "{} responses but {} covariate rows",
                response.len(),
                rows.len()
            )));
        }
        let (q, p) = rows
            .first()
            .map(|r| (r.circular.len(), r.linear.len()))
            .unwrap_or((0, 0));
        let mut design = Vec::with_capacity(rows.len() * (2 * q + p));
        for (i, row) in rows.iter().enumerate() {
            if row.circular.len() != q || row.linear.len() != p {
                return Err(Error::domain(format!(
                    "row {i} has shape ({}, {}), expected ({q}, {p})",
                    row.circular.len(),
                    row.linear.len()
                )));
            }
            expand_into(row, &mut design);
        }
        Self::from_design(response, design, q, p)
    }

    /// Builds a dataset from an already expanded row-major design.
    pub fn from_design(
        response: Vec<f64>,
        design: Vec<f64>,
        n_circular: usize,
        n_linear: usize,
    ) -> Result<Self> {
        let dim = 2 * n_circular + n_linear;
        if design.len() != response.len() * dim {
            return Err(Error::domain(format!(
                "design has {} values, expected {} × {dim}",
                design.len(),
                response.len()
            )));
        }
        if let Some(bad) = response.iter().chain(&design).find(|v| !v.is_finite()) {
            return Err(Error::domain(format!("non-finite value {bad} in dataset")));
        }
        let response = response.into_iter().map(wrap).collect();
        Ok(Dataset {
            response,
            design,
            n_circular,
            n_linear,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.response.len()
    }

    pub fn is_empty(&self) -> bool {
        self.response.is_empty()
    }

    /// Number of expanded columns, `2q + p`.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n_circular + self.n_linear
    }

    pub fn n_circular(&self) -> usize {
        self.n_circular
    }

    pub fn n_linear(&self) -> usize {
        self.n_linear
    }

    #[inline]
    pub fn response(&self) -> &[f64] {
        &self.response
    }

    #[inline]
    pub fn design(&self) -> &[f64] {
        &self.design
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let d = self.dim();
        &self.design[i * d..(i + 1) * d]
    }

    /// Same covariates, new responses (wrapped).
    pub fn with_response(&self, response: Vec<f64>) -> Result<Self> {
        Self::from_design(response, self.design.clone(), self.n_circular, self.n_linear)
    }

    /// Every response rotated by `delta`.
    pub fn rotated(&self, delta: f64) -> Self {
        let mut out = self.clone();
        for t in &mut out.response {
            *t = wrap(*t + delta);
        }
        out
    }

    /// Rows reordered so that row `i` of the result is row `order[i]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        let d = self.dim();
        let mut response = Vec::with_capacity(order.len());
        let mut design = Vec::with_capacity(order.len() * d);
        for &i in order {
            response.push(self.response[i]);
            design.extend_from_slice(self.row(i));
        }
        Dataset {
            response,
            design,
            n_circular: self.n_circular,
            n_linear: self.n_linear,
        }
    }

    /// Rejects constant columns (they would act as an intercept competing with
    /// μ) and linearly dependent columns.
    pub fn validate_design(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::Design {
                reason: "at least one covariate is required".into(),
                columns: vec![],
            });
        }
        let n = self.len();
        let constant: Vec<usize> = (0..d)
            .filter(|&j| {
                let (lo, hi) = (0..n)
                    .map(|i| self.design[i * d + j])
                    .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
                hi - lo <= 1e-12 * hi.abs().max(lo.abs()).max(1.0)
            })
            .collect();
        if !constant.is_empty() {
            return Err(Error::Design {
                reason: "constant column acts as an intercept, which is not identifiable against μ".into(),
                columns: constant,
            });
        }
        crate::linalg::check_column_rank(&self.design, None, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rows(vals: &[(f64, f64)]) -> Vec<CovariateRow> {
        vals.iter().map(|&(c, l)| CovariateRow::new(vec![c], vec![l])).collect()
    }

    #[test]
    fn construction_and_layout() {
        let ds = Dataset::new(vec![-PI / 2.0, 7.0], &rows(&[(0.0, 1.0), (PI / 2.0, 2.0)])).unwrap();
        assert_eq!(ds.dim(), 3);
        assert!((ds.response()[0] - 1.5 * PI).abs() < 1e-15);
        assert_eq!(ds.row(0), &[1.0, 0.0, 1.0]);
        assert!(Dataset::new(vec![1.0], &[]).is_err());
        assert!(Dataset::new(vec![f64::NAN], &rows(&[(0.0, 1.0)])).is_err());
    }

    #[test]
    fn design_validation() {
        let ok = Dataset::new(
            vec![0.0; 4],
            &rows(&[(0.1, 1.0), (1.0, -2.0), (2.0, 0.5), (4.0, 3.0)]),
        )
        .unwrap();
        ok.validate_design().unwrap();

        let constant = Dataset::new(vec![0.0; 3], &rows(&[(0.1, 1.0), (1.0, 1.0), (2.0, 1.0)])).unwrap();
        match constant.validate_design() {
            Err(Error::Design { columns, .. }) => assert_eq!(columns, vec![2]),
            other => panic!("{other:?}"),
        }

        let dup: Vec<CovariateRow> = [1.0, 2.0, 3.0, -1.0]
            .iter()
            .map(|&z| CovariateRow::new(vec![], vec![z, 2.0 * z]))
            .collect();
        let ds = Dataset::new(vec![0.0; 4], &dup).unwrap();
        match ds.validate_design() {
            Err(Error::Design { columns, .. }) => assert_eq!(columns, vec![1]),
            other => panic!("{other:?}"),
        }
    }
}
