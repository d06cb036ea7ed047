//! K-component mixtures of circular regressions: EM fitting, random
//! multi-start, BIC model selection and MAP clustering.

use std::f64::consts::TAU;

use rand::Rng;
use rand_distr::{Dirichlet, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circular::{link_g, resultant_direction, Angle};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::regression::{
    fit_circreg, link_values, newton_solve, residual_resultant, scaled_derivatives, scores_within,
    weighted_cos, BDerivatives, CircRegParams, FitDiagnostics, RegressionOptions,
};
use crate::rng::{derive_seed, stream};
use crate::special::{log_i0_unchecked, solve_kappa, Concentration, KappaSolve};

/// Relative effective size below which a component counts as empty.
pub const EMPTY_COMPONENT_FRACTION: f64 = 1e-6;

/// Restarts used for simulation studies.
pub const DEFAULT_RESTARTS_SIMULATION: usize = 10;
/// Restarts used for real-data commands.
pub const DEFAULT_RESTARTS_DATA: usize = 50;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentParams {
    pub pi: f64,
    pub mu: Angle,
    pub kappa: Concentration,
    pub coefficients: Vec<f64>,
}

impl ComponentParams {
    pub fn regression(&self) -> CircRegParams {
        CircRegParams {
            mu: self.mu,
            kappa: self.kappa,
            coefficients: self.coefficients.clone(),
        }
    }

    /// Conditional mean direction `μ + g(x*ᵀB)` at an expanded row.
    pub fn location(&self, row: &[f64]) -> f64 {
        let eta: f64 = row.iter().zip(&self.coefficients).map(|(a, b)| a * b).sum();
        self.mu.radians() + link_g(eta)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureParams {
    pub components: Vec<ComponentParams>,
}

impl MixtureParams {
    /// Validates weights (positive, summing to one) and coefficient lengths.
    pub fn new(components: Vec<ComponentParams>) -> Result<Self> {
        let params = MixtureParams { components };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let Some(first) = self.components.first() else {
            return Err(Error::domain("a mixture needs at least one component"));
        };
        let dim = first.coefficients.len();
        let mut total = 0.0;
        for (k, c) in self.components.iter().enumerate() {
            if !(c.pi > 0.0 && c.pi <= 1.0) {
                return Err(Error::domain(format!("component {k}: weight {} outside (0, 1]", c.pi)));
            }
            if c.coefficients.len() != dim || c.coefficients.iter().any(|v| !v.is_finite()) {
                return Err(Error::domain(format!("component {k}: invalid coefficient vector")));
            }
            total += c.pi;
        }
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::domain(format!("mixing weights sum to {total}, not 1")));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    pub fn dim(&self) -> usize {
        self.components.first().map_or(0, |c| c.coefficients.len())
    }

    pub fn weights(&self) -> Vec<f64> {
        self.components.iter().map(|c| c.pi).collect()
    }

    /// Random start: μ ~ U[0, 2π), κ ~ U[1, 10], B entries ~ U[−½, ½],
    /// π ~ Dirichlet(5, …, 5).
    pub fn random<R: Rng + ?Sized>(k: usize, dim: usize, rng: &mut R) -> Self {
        let weights = if k == 1 {
            vec![1.0]
        } else {
            Dirichlet::new(&vec![5.0; k])
                .expect("valid Dirichlet parameters")
                .sample(rng)
        };
        let components = weights
            .into_iter()
            .map(|pi| {
                let mu = Angle::from(rng.gen_range(0.0..TAU));
                let kappa = Concentration::clamped(rng.gen_range(1.0..10.0));
                let coefficients = (0..dim).map(|_| rng.gen_range(-0.5..0.5)).collect();
                ComponentParams {
                    pi,
                    mu,
                    kappa,
                    coefficients,
                }
            })
            .collect();
        MixtureParams { components }
    }

    /// Components reordered so that component `j` of the result is `order[j]` of `self`.
    pub fn permuted(&self, order: &[usize]) -> Self {
        MixtureParams {
            components: order.iter().map(|&j| self.components[j].clone()).collect(),
        }
    }

    /// Every μ_k rotated by `delta`.
    pub fn rotated(&self, delta: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.components {
            c.mu = c.mu.rotate(delta);
        }
        out
    }
}

/// Number of free parameters: `(K − 1) + K(2 + 2q + p)`.
pub fn degrees_of_freedom(k: usize, n_circular: usize, n_linear: usize) -> usize {
    (k - 1) + k * (2 + 2 * n_circular + n_linear)
}

pub fn bic(loglik: f64, n: usize, df: usize) -> f64 {
    -2.0 * loglik + (n as f64).ln() * df as f64
}

/// Posterior component probabilities, `n × K`, stored column by column.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Responsibilities {
    n: usize,
    k: usize,
    values: Vec<f64>,
}

impl Responsibilities {
    /// Builds from row-major values (one row of K posteriors per observation).
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let k = rows.first().map_or(0, Vec::len);
        let mut values = vec![0.0; n * k];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::domain("ragged responsibility rows"));
            }
            for (j, &v) in row.iter().enumerate() {
                values[j * n + i] = v;
            }
        }
        Ok(Responsibilities { n, k, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        self.values[k * self.n + i]
    }

    pub fn column(&self, k: usize) -> &[f64] {
        &self.values[k * self.n..(k + 1) * self.n]
    }

    pub fn row(&self, i: usize) -> Vec<f64> {
        (0..self.k).map(|k| self.get(i, k)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmOptions {
    /// Relative log-likelihood change that ends EM.
    pub tol: f64,
    pub max_iter: usize,
    /// Newton steps on each `B_k` per M-step.
    pub max_inner: usize,
    /// Score residuals of every component must also fall below `score_tol · n`.
    pub score_tol: f64,
}

impl Default for EmOptions {
    fn default() -> Self {
        EmOptions {
            tol: 1e-8,
            max_iter: 1000,
            max_inner: 25,
            score_tol: 1e-6,
        }
    }
}

impl EmOptions {
    pub fn regression(&self) -> RegressionOptions {
        RegressionOptions {
            tol: self.tol,
            max_iter: self.max_iter,
            max_inner: self.max_inner,
            score_tol: self.score_tol,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixtureFit {
    pub components: Vec<ComponentParams>,
    pub loglik: f64,
    pub bic: f64,
    pub df: usize,
    pub n: usize,
    pub responsibilities: Responsibilities,
    pub diagnostics: FitDiagnostics,
    pub restarts_used: usize,
    /// Final log-likelihood of every start (`None` for failed starts).
    pub start_logliks: Vec<Option<f64>>,
}

impl MixtureFit {
    pub fn params(&self) -> MixtureParams {
        MixtureParams {
            components: self.components.clone(),
        }
    }

    pub fn k(&self) -> usize {
        self.components.len()
    }

    /// Wraps fixed parameters as a fit on `data` (E-step, log-likelihood, BIC).
    pub fn from_params(data: &Dataset, params: &MixtureParams, diagnostics: FitDiagnostics) -> Result<Self> {
        params.validate()?;
        if params.dim() != data.dim() {
            return Err(Error::domain(format!(
                "model has {} coefficients per component, data has {} columns",
                params.dim(),
                data.dim()
            )));
        }
        let mut state = EmState::new(data, params);
        let loglik = state.e_step(data, params);
        let df = degrees_of_freedom(params.k(), data.n_circular(), data.n_linear());
        Ok(MixtureFit {
            components: params.components.clone(),
            loglik,
            bic: bic(loglik, data.len(), df),
            df,
            n: data.len(),
            responsibilities: state.responsibilities(),
            diagnostics,
            restarts_used: 1,
            start_logliks: vec![Some(loglik)],
        })
    }
}

// ---------------------------------------------------------------------------
// EM machinery

struct EmState {
    n: usize,
    k: usize,
    /// `g(x_iᵀB_k)`, column per component.
    link: Vec<f64>,
    /// log(π_k VM(θ_i | …)), column per component.
    log_joint: Vec<f64>,
    /// responsibilities, column per component.
    resp: Vec<f64>,
}

impl EmState {
    fn new(data: &Dataset, params: &MixtureParams) -> Self {
        let n = data.len();
        let k = params.k();
        let mut state = EmState {
            n,
            k,
            link: vec![0.0; n * k],
            log_joint: vec![0.0; n * k],
            resp: vec![0.0; n * k],
        };
        for (j, c) in params.components.iter().enumerate() {
            state.refresh_link(data, j, &c.coefficients);
        }
        state
    }

    fn refresh_link(&mut self, data: &Dataset, j: usize, b: &[f64]) {
        let n = self.n;
        link_values(data, b, &mut self.link[j * n..(j + 1) * n]);
    }

    fn link(&self, j: usize) -> &[f64] {
        &self.link[j * self.n..(j + 1) * self.n]
    }

    fn resp(&self, j: usize) -> &[f64] {
        &self.resp[j * self.n..(j + 1) * self.n]
    }

    /// Fills responsibilities from the current link values and returns the
    /// observed-data log-likelihood.
    fn e_step(&mut self, data: &Dataset, params: &MixtureParams) -> f64 {
        let n = self.n;
        let theta = data.response();
        for (j, c) in params.components.iter().enumerate() {
            let kappa = c.kappa.value();
            let mu = c.mu.radians();
            let constant = c.pi.ln() + (-TAU.ln() - log_i0_unchecked(kappa));
            let link = &self.link[j * n..(j + 1) * n];
            let out = &mut self.log_joint[j * n..(j + 1) * n];
            for ((o, &t), &gi) in out.iter_mut().zip(theta).zip(link) {
                *o = constant + kappa * (t - mu - gi).cos();
            }
        }
        let mut ll = 0.0;
        let mut row = vec![0.0; self.k];
        for i in 0..n {
            let mut max = f64::NEG_INFINITY;
            for (j, r) in row.iter_mut().enumerate() {
                *r = self.log_joint[j * n + i];
                max = max.max(*r);
            }
            let mut total = 0.0;
            for r in row.iter_mut() {
                *r = (*r - max).exp();
                total += *r;
            }
            ll += max + total.ln();
            for (j, r) in row.iter().enumerate() {
                self.resp[j * n + i] = r / total;
            }
        }
        ll
    }

    fn responsibilities(&self) -> Responsibilities {
        Responsibilities {
            n: self.n,
            k: self.k,
            values: self.resp.clone(),
        }
    }
}

fn component_size(weights: &[f64]) -> f64 {
    weights.iter().sum()
}

fn check_size(component: usize, size: f64, n: usize) -> Result<()> {
    let threshold = EMPTY_COMPONENT_FRACTION * n as f64;
    if !(size > threshold) {
        return Err(Error::EmptyComponent {
            component,
            weight: size,
            threshold,
        });
    }
    Ok(())
}

fn check_component_index(resp: &Responsibilities, data: &Dataset, k: usize) -> Result<()> {
    if resp.n != data.len() {
        return Err(Error::domain("responsibilities and data differ in length"));
    }
    if k >= resp.k {
        return Err(Error::domain(format!("component {k} out of range (K = {})", resp.k)));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// public operations

/// `log Σ_k π_k VM(θ | μ_k + g(x*ᵀB_k), κ_k)` at one expanded row.
pub fn mixture_log_density(theta: f64, row: &[f64], components: &[ComponentParams]) -> f64 {
    let terms: Vec<f64> = components
        .iter()
        .map(|c| c.pi.ln() + crate::circular::vm_log_density(theta, c.location(row), c.kappa))
        .collect();
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    max + terms.iter().map(|t| (t - max).exp()).sum::<f64>().ln()
}

/// Observed-data log-likelihood of `params` on `data`.
pub fn mixture_loglik(data: &Dataset, params: &MixtureParams) -> Result<f64> {
    Ok(MixtureFit::from_params(data, params, FitDiagnostics::default())?.loglik)
}

/// E-step: responsibilities `γ_ik ∝ π_k VM(θ_i | μ_k + g(x_i*ᵀB_k), κ_k)`.
pub fn e_step(data: &Dataset, components: &[ComponentParams]) -> Result<Responsibilities> {
    let params = MixtureParams {
        components: components.to_vec(),
    };
    Ok(MixtureFit::from_params(data, &params, FitDiagnostics::default())?.responsibilities)
}

/// `π_k = (1/n) Σ_i γ_ik`.
pub fn m_step_pi(resp: &Responsibilities) -> Vec<f64> {
    (0..resp.k)
        .map(|k| component_size(resp.column(k)) / resp.n as f64)
        .collect()
}

/// γ-weighted mean direction update for component `k` given `B_k`.
pub fn m_step_mu(k: usize, resp: &Responsibilities, b_k: &[f64], data: &Dataset) -> Result<Angle> {
    check_component_index(resp, data, k)?;
    let mut g = vec![0.0; data.len()];
    link_values(data, b_k, &mut g);
    let (s, c, total) = residual_resultant(data, resp.column(k), &g);
    resultant_direction(s, c, total)
}

/// `κ_k = A⁻¹((1/n_k) Σ_i γ_ik cos(θ_i − μ_k − g(x_i*ᵀB_k)))`, `n_k = Σ_i γ_ik`.
pub fn m_step_kappa(
    k: usize,
    resp: &Responsibilities,
    mu_k: Angle,
    b_k: &[f64],
    data: &Dataset,
) -> Result<KappaSolve> {
    check_component_index(resp, data, k)?;
    let w = resp.column(k);
    let size = component_size(w);
    check_size(k, size, data.len())?;
    let mut g = vec![0.0; data.len()];
    link_values(data, b_k, &mut g);
    solve_kappa(weighted_cos(data, w, mu_k.radians(), &g) / size)
}

/// Weighted Newton–Raphson on `B_k` (weights `γ_·k`) from `params_k`.
pub fn m_step_b(
    k: usize,
    resp: &Responsibilities,
    params_k: &ComponentParams,
    data: &Dataset,
    max_inner: usize,
) -> Result<Vec<f64>> {
    check_component_index(resp, data, k)?;
    crate::linalg::check_column_rank(data.design(), Some(resp.column(k)), data.dim())?;
    let (b, _) = newton_solve(
        data,
        resp.column(k),
        params_k.mu.radians(),
        &params_k.coefficients,
        max_inner,
    );
    Ok(b)
}

/// Gradient `κ X*ᵀĠW u` and Hessian of the expected complete-data
/// log-likelihood with respect to `B_k`.
pub fn q_b_derivatives(
    k: usize,
    resp: &Responsibilities,
    params_k: &ComponentParams,
    data: &Dataset,
) -> Result<BDerivatives> {
    check_component_index(resp, data, k)?;
    Ok(scaled_derivatives(
        data,
        resp.column(k),
        params_k.mu.radians(),
        params_k.kappa.value(),
        &params_k.coefficients,
    ))
}

fn check_em_inputs(data: &Dataset, init: &MixtureParams) -> Result<()> {
    init.validate()?;
    let k = init.k();
    let d = data.dim();
    if init.dim() != d {
        return Err(Error::domain(format!(
            "initial coefficients have length {}, design has {d} columns",
            init.dim()
        )));
    }
    let needed = k * (d + 2) + k - 1;
    if data.len() <= needed {
        return Err(Error::domain(format!(
            "need more than {needed} observations for K = {k}, got {}",
            data.len()
        )));
    }
    Ok(())
}

/// EM from the given initial parameters.
///
/// Each iteration runs the E-step, then updates π, and for every component
/// μ_k, κ_k and finally `B_k` by damped Newton. The log-likelihood of the
/// initial parameters is the first entry of the trace.
pub fn em_fit(data: &Dataset, init: &MixtureParams, options: &EmOptions) -> Result<MixtureFit> {
    check_em_inputs(data, init)?;
    data.validate_design()?;
    em_run(data, init, options)
}

fn em_run(data: &Dataset, init: &MixtureParams, options: &EmOptions) -> Result<MixtureFit> {
    let n = data.len();
    let k = init.k();
    let mut params = init.clone();
    let mut state = EmState::new(data, &params);
    let mut diag = FitDiagnostics::default();
    let mut ll = state.e_step(data, &params);
    diag.loglik_trace.push(ll);
    let bound = options.score_tol * n as f64;
    let mut grad_norms = vec![0.0; k];

    for iter in 1..=options.max_iter {
        // π
        for j in 0..k {
            let size = component_size(state.resp(j));
            check_size(j, size, n)?;
            params.components[j].pi = size / n as f64;
        }
        // μ_k, κ_k, B_k
        for j in 0..k {
            let w = state.resp(j);
            let size = component_size(w);
            let (s, c, total) = residual_resultant(data, w, state.link(j));
            let mu = resultant_direction(s, c, total)?;
            let solve = solve_kappa(weighted_cos(data, w, mu.radians(), state.link(j)) / size)?;
            diag.note_kappa(&solve);
            let (b, summary) = newton_solve(
                data,
                w,
                mu.radians(),
                &params.components[j].coefficients,
                options.max_inner,
            );
            diag.note_newton(&summary);
            grad_norms[j] = summary.last_grad_norm;
            let comp = &mut params.components[j];
            comp.mu = mu;
            comp.kappa = solve.kappa;
            comp.coefficients = b;
            state.refresh_link(data, j, &params.components[j].coefficients);
        }

        let prev = ll;
        ll = state.e_step(data, &params);
        diag.loglik_trace.push(ll);
        diag.iterations = iter;
        diag.final_loglik = ll;
        if !ll.is_finite() {
            return Err(Error::Degenerate(format!("log-likelihood became {ll} at iteration {iter}")));
        }
        if iter >= 2 && (ll - prev).abs() <= options.tol * prev.abs().max(1.0) {
            let scores_ok = params.components.iter().enumerate().all(|(j, c)| {
                let res = residual_resultant(data, state.resp(j), state.link(j));
                scores_within(res, c.mu, c.kappa, grad_norms[j], bound)
            });
            if scores_ok {
                diag.converged = true;
                break;
            }
        }
    }

    let df = degrees_of_freedom(k, data.n_circular(), data.n_linear());
    Ok(MixtureFit {
        components: params.components,
        loglik: ll,
        bic: bic(ll, n, df),
        df,
        n,
        responsibilities: state.responsibilities(),
        diagnostics: diag,
        restarts_used: 1,
        start_logliks: vec![Some(ll)],
    })
}

/// Runs EM from every start in `warm_starts` followed by `restarts` random
/// starts drawn from independent streams of `seed`, and keeps the converged
/// fit with the largest log-likelihood (falling back to the best
/// non-converged fit when none converged).
pub fn multi_start_fit(
    data: &Dataset,
    k: usize,
    restarts: usize,
    seed: u64,
    warm_starts: &[MixtureParams],
    options: &EmOptions,
) -> Result<MixtureFit> {
    if k == 0 {
        return Err(Error::domain("K must be at least 1"));
    }
    if restarts + warm_starts.len() == 0 {
        return Err(Error::domain("at least one start is required"));
    }
    data.validate_design()?;
    let d = data.dim();
    let inits: Vec<MixtureParams> = warm_starts
        .iter()
        .cloned()
        .chain((0..restarts).map(|r| MixtureParams::random(k, d, &mut stream(seed, r as u64))))
        .collect();
    for init in &inits {
        check_em_inputs(data, init)?;
        if init.k() != k {
            return Err(Error::domain(format!("warm start has {} components, expected {k}", init.k())));
        }
    }

    let results: Vec<Result<MixtureFit>> = inits.par_iter().map(|init| em_run(data, init, options)).collect();
    select_best(results)
}

fn select_best(results: Vec<Result<MixtureFit>>) -> Result<MixtureFit> {
    let start_logliks: Vec<Option<f64>> = results.iter().map(|r| r.as_ref().ok().map(|f| f.loglik)).collect();
    let mut best: Option<(usize, bool, f64)> = None;
    for (i, r) in results.iter().enumerate() {
        let Ok(fit) = r else { continue };
        let key = (fit.diagnostics.converged, fit.loglik);
        let better = match best {
            None => true,
            Some((_, conv, ll)) => (key.0 && !conv) || (key.0 == conv && key.1 > ll),
        };
        if better {
            best = Some((i, key.0, key.1));
        }
    }
    let used = results.len();
    match best {
        Some((i, _, _)) => {
            let mut fit = results.into_iter().nth(i).expect("index in range")?;
            fit.restarts_used = used;
            fit.start_logliks = start_logliks;
            Ok(fit)
        }
        None => Err(Error::FittingFailed {
            causes: results
                .into_iter()
                .enumerate()
                .filter_map(|(i, r)| r.err().map(|e| format!("start {i}: {e}")))
                .collect(),
        }),
    }
}

/// The single-component model as a [`MixtureFit`] (π = 1), fitted by
/// alternating μ/κ updates and Newton on `B` from `B = 0`.
pub fn fit_single(data: &Dataset, options: &EmOptions) -> Result<MixtureFit> {
    let (params, diag) = fit_circreg(data, None, &options.regression())?;
    let mixture = MixtureParams {
        components: vec![ComponentParams {
            pi: 1.0,
            mu: params.mu,
            kappa: params.kappa,
            coefficients: params.coefficients,
        }],
    };
    MixtureFit::from_params(data, &mixture, diag)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicRow {
    pub k: usize,
    pub loglik: Option<f64>,
    pub df: usize,
    pub bic: Option<f64>,
    pub converged: bool,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicScan {
    pub rows: Vec<BicRow>,
    pub selected_k: usize,
    #[serde(skip)]
    pub fits: Vec<Option<MixtureFit>>,
}

impl BicScan {
    pub fn selected_fit(&self) -> Option<&MixtureFit> {
        self.rows
            .iter()
            .position(|r| r.k == self.selected_k)
            .and_then(|i| self.fits.get(i))
            .and_then(Option::as_ref)
    }
}

/// Fits every K in `k_values` (K = 1 by plain circular regression, larger K by
/// [`multi_start_fit`] with seed derived from `(seed, K)`) and selects the K
/// with the smallest BIC. Failed K are reported and excluded.
pub fn bic_scan(
    data: &Dataset,
    k_values: &[usize],
    restarts: usize,
    seed: u64,
    options: &EmOptions,
) -> Result<BicScan> {
    if k_values.is_empty() {
        return Err(Error::domain("K range is empty"));
    }
    let mut rows = Vec::with_capacity(k_values.len());
    let mut fits = Vec::with_capacity(k_values.len());
    for &k in k_values {
        let df = if k == 0 { 0 } else { degrees_of_freedom(k, data.n_circular(), data.n_linear()) };
        let result = if k == 1 {
            fit_single(data, options)
        } else {
            multi_start_fit(data, k, restarts, derive_seed(seed, k as u64), &[], options)
        };
        match result {
            Ok(fit) => {
                rows.push(BicRow {
                    k,
                    loglik: Some(fit.loglik),
                    df,
                    bic: Some(fit.bic),
                    converged: fit.diagnostics.converged,
                    error: None,
                });
                fits.push(Some(fit));
            }
            Err(e) => {
                rows.push(BicRow {
                    k,
                    loglik: None,
                    df,
                    bic: None,
                    converged: false,
                    error: Some(e.to_string()),
                });
                fits.push(None);
            }
        }
    }
    let selected_k = rows
        .iter()
        .filter_map(|r| r.bic.map(|b| (r.k, b)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|(k, _)| k)
        .ok_or_else(|| Error::FittingFailed {
            causes: rows.iter().filter_map(|r| r.error.clone()).collect(),
        })?;
    Ok(BicScan { rows, selected_k, fits })
}

/// MAP labels (0-based): `argmax_k γ_ik`, ties to the lowest index.
pub fn map_cluster(resp: &Responsibilities) -> Vec<usize> {
    (0..resp.n)
        .map(|i| {
            let mut best = 0;
            for k in 1..resp.k {
                if resp.get(i, k) > resp.get(i, best) {
                    best = k;
                }
            }
            best
        })
        .collect()
}
