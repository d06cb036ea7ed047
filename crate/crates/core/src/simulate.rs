//! Built-in simulation scenarios and the Monte Carlo harness.

use std::f64::consts::PI;
use std::io::Write;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circular::{expand_into, vm_sample, CovariateRow};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::eval::{adjusted_rand_index, align_to, class_error, mean_sd, parameter_names, rmse, ParameterTable};
use crate::mixture::{map_cluster, multi_start_fit, ComponentParams, EmOptions, MixtureParams};
use crate::rng::{derive_seed, stream};
use crate::special::Concentration;
use crate::Angle;

pub const DEFAULT_REPLICATIONS: usize = 100;

/// Independent uniform covariates: each `(low, high)` pair is one covariate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovariateSpec {
    pub circular: Vec<(f64, f64)>,
    pub linear: Vec<(f64, f64)>,
}

impl Default for CovariateSpec {
    /// One circular covariate on (π/3, 8π/3) and one linear on (−½, ½).
    fn default() -> Self {
        CovariateSpec {
            circular: vec![(PI / 3.0, 8.0 * PI / 3.0)],
            linear: vec![(-0.5, 0.5)],
        }
    }
}

impl CovariateSpec {
    pub fn dim(&self) -> usize {
        2 * self.circular.len() + self.linear.len()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> CovariateRow {
        let circular = self.circular.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        let linear = self.linear.iter().map(|&(lo, hi)| rng.gen_range(lo..hi)).collect();
        CovariateRow::new(circular, linear)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub name: String,
    pub params: MixtureParams,
    #[serde(default)]
    pub covariates: CovariateSpec,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

fn component(pi: f64, mu: f64, kappa: f64, b: [f64; 3]) -> ComponentParams {
    ComponentParams {
        pi,
        mu: Angle::from(mu),
        kappa: Concentration::clamped(kappa),
        coefficients: b.to_vec(),
    }
}

impl ScenarioSpec {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        if self.params.dim() != self.covariates.dim() {
            return Err(Error::domain(format!(
                "scenario '{}': coefficients have length {}, covariates expand to {}",
                self.name,
                self.params.dim(),
                self.covariates.dim()
            )));
        }
        if self.covariates.circular.iter().chain(&self.covariates.linear).any(|(lo, hi)| !(lo < hi)) {
            return Err(Error::domain("covariate ranges must satisfy low < high"));
        }
        Ok(())
    }

    /// Reads a scenario from a TOML or JSON file (chosen by extension).
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let spec: ScenarioSpec = match path.extension().and_then(|e| e.to_str()) {
            Some("json") => serde_json::from_str(&text)?,
            _ => toml::from_str(&text).map_err(|e| Error::Config(e.to_string()))?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = n;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// The four reference scenarios (two well separated / overlapping
/// two-component designs and their three-component counterparts).
#[allow(clippy::approx_constant)] // location values are tabulated to four decimals
pub fn builtin_scenario(id: u8) -> Result<ScenarioSpec> {
    let params = match id {
        1 | 2 => {
            let (mu1, mu2) = if id == 1 { (1.8850, 4.7124) } else { (2.5133, 4.0841) };
            vec![
                component(0.3, mu1, 4.0, [0.2, 0.1, 0.3]),
                component(0.7, mu2, 6.0, [0.1, 0.2, 0.2]),
            ]
        }
        3 | 4 => {
            let mu = if id == 3 { [1.0996, 3.1416, 5.0625] } else { [1.7279, 3.1416, 4.5553] };
            vec![
                component(0.33, mu[0], 8.0, [0.085, 0.1, 0.3]),
                component(0.33, mu[1], 6.0, [0.09, 0.1, 0.2]),
                component(0.34, mu[2], 8.0, [0.1, 0.1, 0.1]),
            ]
        }
        _ => return Err(Error::domain(format!("unknown scenario {id}; expected 1 to 4"))),
    };
    Ok(ScenarioSpec {
        name: format!("scenario-{id}"),
        params: MixtureParams { components: params },
        covariates: CovariateSpec::default(),
        n: 500,
        seed: 0,
    })
}

/// A simulated dataset with its raw (unexpanded) covariates and true labels.
#[derive(Clone, Debug, PartialEq)]
pub struct SimulatedSample {
    pub data: Dataset,
    pub covariates: Vec<CovariateRow>,
    /// 0-based generating component of each row.
    pub labels: Vec<usize>,
}

/// Draws a component index with probabilities `weights`.
pub(crate) fn draw_component<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.gen();
    let mut acc = 0.0;
    for (k, w) in weights.iter().enumerate() {
        acc += w;
        if u < acc {
            return k;
        }
    }
    weights.len() - 1
}

/// Responses drawn from `params` at the given expanded rows.
pub(crate) fn sample_responses<R: Rng + ?Sized>(
    params: &MixtureParams,
    data: &Dataset,
    rng: &mut R,
) -> (Vec<f64>, Vec<usize>) {
    let weights = params.weights();
    let mut theta = Vec::with_capacity(data.len());
    let mut labels = Vec::with_capacity(data.len());
    for i in 0..data.len() {
        let k = draw_component(&weights, rng);
        let c = &params.components[k];
        theta.push(vm_sample(c.location(data.row(i)), c.kappa, rng).radians());
        labels.push(k);
    }
    (theta, labels)
}

/// For each row: covariates, then the component label, then the response.
/// Circular covariates are kept as drawn (not wrapped).
pub fn generate<R: Rng + ?Sized>(spec: &ScenarioSpec, rng: &mut R) -> Result<SimulatedSample> {
    spec.validate()?;
    let weights = spec.params.weights();
    let mut covariates = Vec::with_capacity(spec.n);
    let mut design = Vec::with_capacity(spec.n * spec.covariates.dim());
    let mut theta = Vec::with_capacity(spec.n);
    let mut labels = Vec::with_capacity(spec.n);
    let mut row = Vec::with_capacity(spec.covariates.dim());
    for _ in 0..spec.n {
        let x = spec.covariates.draw(rng);
        let k = draw_component(&weights, rng);
        row.clear();
        expand_into(&x, &mut row);
        let c = &spec.params.components[k];
        theta.push(vm_sample(c.location(&row), c.kappa, rng).radians());
        design.extend_from_slice(&row);
        covariates.push(x);
        labels.push(k);
    }
    let data = Dataset::from_design(theta, design, spec.covariates.circular.len(), spec.covariates.linear.len())?;
    Ok(SimulatedSample { data, covariates, labels })
}

/// [`generate`] with the spec's own seed.
pub fn generate_seeded(spec: &ScenarioSpec) -> Result<SimulatedSample> {
    generate(spec, &mut stream(spec.seed, 0))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub replicate: usize,
    pub seed: u64,
    pub converged: bool,
    pub loglik: Option<f64>,
    /// Estimates aligned to the truth, in canonical parameter order.
    pub estimates: Option<Vec<f64>>,
    pub class_error: Option<f64>,
    pub ari: Option<f64>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSizeReport {
    pub n: usize,
    pub replications: usize,
    pub failures: usize,
    pub rmse: ParameterTable,
    pub class_error_mean: f64,
    pub class_error_sd: f64,
    pub ari_mean: f64,
    pub ari_sd: f64,
    pub records: Vec<ReplicateRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub scenario: ScenarioSpec,
    pub restarts: usize,
    pub master_seed: u64,
    pub parameter_names: Vec<String>,
    pub results: Vec<SampleSizeReport>,
}

impl MonteCarloReport {
    pub fn for_n(&self, n: usize) -> Option<&SampleSizeReport> {
        self.results.iter().find(|r| r.n == n)
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        serde_json::to_writer_pretty(std::io::BufWriter::new(file), self)?;
        Ok(())
    }

    /// Long format: `n,metric,value`; one row per parameter RMSE per n,
    /// followed by the clustering summaries and failure count.
    pub fn write_csv<W: Write>(&self, writer: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(writer);
        w.write_record(["n", "metric", "value"])?;
        for r in &self.results {
            let n = r.n.to_string();
            for (name, v) in &r.rmse.entries {
                w.write_record([n.as_str(), &format!("rmse_{name}"), &v.to_string()])?;
            }
            for (name, v) in [
                ("class_error_mean", r.class_error_mean),
                ("class_error_sd", r.class_error_sd),
                ("ari_mean", r.ari_mean),
                ("ari_sd", r.ari_sd),
                ("failures", r.failures as f64),
            ] {
                w.write_record([n.as_str(), name, &v.to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

fn run_replicate(
    scenario: &ScenarioSpec,
    n: usize,
    replicate: usize,
    seed: u64,
    restarts: usize,
    options: &EmOptions,
) -> (ReplicateRecord, Option<MixtureParams>) {
    let spec = scenario.clone().with_n(n);
    let mut record = ReplicateRecord {
        replicate,
        seed,
        converged: false,
        loglik: None,
        estimates: None,
        class_error: None,
        ari: None,
        error: None,
    };
    let outcome = (|| -> Result<MixtureParams> {
        let sample = generate(&spec, &mut stream(seed, 0))?;
        let fit = multi_start_fit(&sample.data, spec.params.k(), restarts, derive_seed(seed, 1), &[], options)?;
        let (aligned, _) = align_to(&fit.params(), &spec.params)?;
        let labels = map_cluster(&fit.responsibilities);
        record.converged = fit.diagnostics.converged;
        record.loglik = Some(fit.loglik);
        record.estimates = Some(flatten(&aligned));
        record.class_error = Some(class_error(&labels, &sample.labels)?);
        record.ari = Some(adjusted_rand_index(&labels, &sample.labels)?);
        Ok(aligned)
    })();
    match outcome {
        Ok(p) => (record, Some(p)),
        Err(e) => {
            record.error = Some(e.to_string());
            (record, None)
        }
    }
}

fn flatten(p: &MixtureParams) -> Vec<f64> {
    p.components
        .iter()
        .flat_map(|c| {
            [c.pi, c.mu.radians(), c.kappa.value()]
                .into_iter()
                .chain(c.coefficients.iter().copied())
        })
        .collect()
}

/// Simulates `replications` datasets per sample size, fits the true K with
/// `restarts` random starts, and summarises estimation and clustering error.
/// Replicate `r` at the `j`-th sample size uses seed
/// `derive_seed(derive_seed(master_seed, j), r)`, so results do not depend on
/// scheduling.
pub fn monte_carlo(
    scenario: &ScenarioSpec,
    n_values: &[usize],
    replications: usize,
    restarts: usize,
    master_seed: u64,
    options: &EmOptions,
) -> Result<MonteCarloReport> {
    if replications == 0 {
        return Err(Error::domain("replications must be at least 1"));
    }
    if n_values.is_empty() {
        return Err(Error::domain("no sample sizes given"));
    }
    scenario.validate()?;
    let mut results = Vec::with_capacity(n_values.len());
    for (j, &n) in n_values.iter().enumerate() {
        let base = derive_seed(master_seed, j as u64);
        let outcomes: Vec<(ReplicateRecord, Option<MixtureParams>)> = (0..replications)
            .into_par_iter()
            .map(|r| run_replicate(scenario, n, r, derive_seed(base, r as u64), restarts, options))
            .collect();
        let fitted: Vec<MixtureParams> = outcomes.iter().filter_map(|(_, p)| p.clone()).collect();
        let records: Vec<ReplicateRecord> = outcomes.into_iter().map(|(r, _)| r).collect();
        let failures = records.len() - fitted.len();
        let rmse = if fitted.is_empty() {
            ParameterTable {
                entries: parameter_names(scenario.params.k(), scenario.params.dim())
                    .into_iter()
                    .map(|n| (n, f64::NAN))
                    .collect(),
            }
        } else {
            rmse(&fitted, &scenario.params)?
        };
        let ce: Vec<f64> = records.iter().filter_map(|r| r.class_error).collect();
        let ari: Vec<f64> = records.iter().filter_map(|r| r.ari).collect();
        let (class_error_mean, class_error_sd) = mean_sd(&ce);
        let (ari_mean, ari_sd) = mean_sd(&ari);
        results.push(SampleSizeReport {
            n,
            replications,
            failures,
            rmse,
            class_error_mean,
            class_error_sd,
            ari_mean,
            ari_sd,
            records,
        });
    }
    Ok(MonteCarloReport {
        scenario: scenario.clone(),
        restarts,
        master_seed,
        parameter_names: parameter_names(scenario.params.k(), scenario.params.dim()),
        results,
    })
}
