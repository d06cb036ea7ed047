//! Parametric bootstrap standard errors and percentile intervals for a fitted
//! mixture, holding the covariates at their observed values.

use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circular::{signed_difference, wrap};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::eval::{align_to, parameter_names};
use crate::mixture::{multi_start_fit, EmOptions, MixtureFit, MixtureParams, DEFAULT_RESTARTS_SIMULATION};
use crate::rng::{derive_seed, stream};
use crate::simulate::sample_responses;

/// Largest tolerated fraction of failed replicate fits.
pub const MAX_FAILURE_FRACTION: f64 = 0.2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapOptions {
    pub replicates: usize,
    /// Random restarts per replicate, in addition to the original fit as a warm start.
    pub restarts: usize,
    pub seed: u64,
    /// Two-sided level; the interval uses the `α/2` and `1 − α/2` percentiles.
    pub alpha: f64,
    pub em: EmOptions,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        BootstrapOptions {
            replicates: 1000,
            restarts: DEFAULT_RESTARTS_SIMULATION,
            seed: 0,
            alpha: 0.05,
            em: EmOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterInterval {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BootstrapResult {
    pub parameters: Vec<ParameterInterval>,
    /// One row per successful replicate in canonical parameter order, matched
    /// to the original fit; μ values wrapped to `[0, 2π)`.
    pub replicates: Vec<Vec<f64>>,
    pub requested: usize,
    pub failures: usize,
    /// Fraction of replicate κ values sitting at the concentration cap.
    pub kappa_capped_fraction: f64,
}

impl BootstrapResult {
    pub fn get(&self, name: &str) -> Option<&ParameterInterval> {
        self.parameters.iter().find(|p| p.name == name)
    }

    /// Columns `parameter,estimate,std_error,ci_low,ci_high`.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["parameter", "estimate", "std_error", "ci_low", "ci_high"])?;
        for p in &self.parameters {
            w.write_record([
                p.name.clone(),
                p.estimate.to_string(),
                p.std_error.to_string(),
                p.ci_low.to_string(),
                p.ci_high.to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }

    /// Raw replicate matrix with a header of parameter names.
    pub fn write_replicates_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(self.parameters.iter().map(|p| p.name.as_str()))?;
        for row in &self.replicates {
            w.write_record(row.iter().map(|v| v.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// Linear-interpolation sample quantile of sorted values.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn std_dev(values: &[f64]) -> f64 {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
}

fn flatten(p: &MixtureParams) -> Vec<f64> {
    p.components
        .iter()
        .flat_map(|c| [c.pi, c.mu.radians(), c.kappa.value()].into_iter().chain(c.coefficients.iter().copied()))
        .collect()
}

/// Standard errors and percentile intervals from replicates already matched
/// to `point`. μ replicates are re-centred into `(μ̂ − π, μ̂ + π]` first; the
/// interval endpoints are wrapped back to `[0, 2π)`.
pub fn summarize_replicates(point: &MixtureParams, replicates: &[MixtureParams], alpha: f64) -> Result<Vec<ParameterInterval>> {
    if replicates.len() < 2 {
        return Err(Error::domain("at least two replicates are needed"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!("alpha {alpha} outside (0, 1)")));
    }
    let names = parameter_names(point.k(), point.dim());
    let estimate = flatten(point);
    let per_component = 3 + point.dim();
    let rows: Vec<Vec<f64>> = replicates.iter().map(flatten).collect();
    let mut out = Vec::with_capacity(names.len());
    for (j, name) in names.into_iter().enumerate() {
        let is_mu = j % per_component == 1;
        let mut column: Vec<f64> = rows
            .iter()
            .map(|r| if is_mu { estimate[j] + signed_difference(r[j], estimate[j]) } else { r[j] })
            .collect();
        let std_error = std_dev(&column);
        column.sort_by(f64::total_cmp);
        let mut ci_low = quantile(&column, alpha / 2.0);
        let mut ci_high = quantile(&column, 1.0 - alpha / 2.0);
        if is_mu {
            ci_low = wrap(ci_low);
            ci_high = wrap(ci_high);
        }
        out.push(ParameterInterval {
            name,
            estimate: estimate[j],
            std_error,
            ci_low,
            ci_high,
        });
    }
    Ok(out)
}

/// Draws `replicates` response vectors from the fitted mixture at the observed
/// covariates, refits each with the original fit as a warm start plus
/// `restarts` random starts, matches components to the original fit and
/// summarises the replicate distribution.
pub fn parametric_bootstrap(fit: &MixtureFit, data: &Dataset, options: &BootstrapOptions) -> Result<BootstrapResult> {
    if !fit.diagnostics.converged {
        return Err(Error::domain("bootstrap requires a converged fit"));
    }
    if options.replicates < 2 {
        return Err(Error::domain("bootstrap needs at least two replicates"));
    }
    if fit.n != data.len() {
        return Err(Error::domain(format!("fit used {} rows but data has {}", fit.n, data.len())));
    }
    let point = fit.params();
    let outcomes: Vec<Result<MixtureParams>> = (0..options.replicates)
        .into_par_iter()
        .map(|r| {
            let seed = derive_seed(options.seed, r as u64);
            let (theta, _) = sample_responses(&point, data, &mut stream(seed, 0));
            let boot = data.with_response(theta)?;
            let refit = multi_start_fit(
                &boot,
                point.k(),
                options.restarts,
                derive_seed(seed, 1),
                std::slice::from_ref(&point),
                &options.em,
            )?;
            Ok(align_to(&refit.params(), &point)?.0)
        })
        .collect();

    let requested = outcomes.len();
    let mut causes = Vec::new();
    let mut fitted = Vec::with_capacity(requested);
    for (r, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(p) => fitted.push(p),
            Err(e) => causes.push(format!("replicate {r}: {e}")),
        }
    }
    let failures = causes.len();
    if failures as f64 > MAX_FAILURE_FRACTION * requested as f64 || fitted.len() < 2 {
        return Err(Error::BootstrapUnreliable {
            failed: failures,
            total: requested,
        });
    }
    let parameters = summarize_replicates(&point, &fitted, options.alpha)?;
    let kappas: Vec<bool> = fitted
        .iter()
        .flat_map(|p| p.components.iter().map(|c| c.kappa.is_capped()))
        .collect();
    let kappa_capped_fraction = kappas.iter().filter(|&&c| c).count() as f64 / kappas.len() as f64;
    Ok(BootstrapResult {
        parameters,
        replicates: fitted.iter().map(flatten).collect(),
        requested,
        failures,
        kappa_capped_fraction,
    })
}
