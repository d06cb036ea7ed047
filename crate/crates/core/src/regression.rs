//! Maximum-likelihood fitting of the single-component circular regression
//! `θ | x ~ VM(μ + g(x*ᵀB), κ)` with `g(t) = 2·atan(t)`.
//!
//! Fitting alternates closed-form updates of μ and κ given `B` with damped
//! Newton–Raphson on `B` given μ. The kernels here take a weight vector so the
//! mixture M-step reuses them with responsibilities as weights.

use std::collections::BTreeSet;
use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::circular::{link_g, link_g_deriv, resultant_direction, Angle};
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::linalg::solve_spd_with_ridge;
use crate::special::{log_i0_unchecked, solve_kappa, Concentration, KappaClamp, KappaSolve};

/// Maximum number of step halvings in one damped Newton step.
/// Predicted-gain threshold, relative to total weight, for skipping the line search.
const ROUNDING_GAIN: f64 = 64.0 * f64::EPSILON;

pub const MAX_HALVINGS: u32 = 20;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircRegParams {
    pub mu: Angle,
    pub kappa: Concentration,
    pub coefficients: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitFlag {
    KappaCapped,
    KappaZeroed,
    HessianRegularized,
    StepHalved,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub iterations: usize,
    pub converged: bool,
    pub final_loglik: f64,
    pub loglik_trace: Vec<f64>,
    pub flags: BTreeSet<FitFlag>,
}

impl FitDiagnostics {
    pub(crate) fn note_kappa(&mut self, solve: &KappaSolve) {
        match solve.clamp {
            KappaClamp::Cap => {
                self.flags.insert(FitFlag::KappaCapped);
            }
            KappaClamp::Zero => {
                self.flags.insert(FitFlag::KappaZeroed);
            }
            KappaClamp::None => {}
        }
    }

    pub(crate) fn note_newton(&mut self, info: &NewtonSummary) {
        if info.regularized {
            self.flags.insert(FitFlag::HessianRegularized);
        }
        if info.halved {
            self.flags.insert(FitFlag::StepHalved);
        }
    }

    /// Largest decrease between consecutive trace entries (0 if monotone).
    pub fn worst_decrease(&self) -> f64 {
        self.loglik_trace
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionOptions {
    /// Relative log-likelihood change that ends the outer loop.
    pub tol: f64,
    pub max_iter: usize,
    /// Newton steps on `B` per outer iteration.
    pub max_inner: usize,
    /// Score residuals (μ, κ, B) must also fall below `score_tol · n`.
    pub score_tol: f64,
}

impl Default for RegressionOptions {
    fn default() -> Self {
        RegressionOptions {
            tol: 1e-8,
            max_iter: 500,
            max_inner: 25,
            score_tol: 1e-6,
        }
    }
}

/// Outcome of one damped Newton step.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepInfo {
    pub hessian_regularized: bool,
    pub halvings: u32,
    /// False when no step length in the halving sequence improved the objective.
    pub accepted: bool,
    pub step_norm: f64,
    /// κ-free gradient norm at the starting point.
    pub grad_norm: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub(crate) struct NewtonSummary {
    pub steps: usize,
    /// Gradient norm (κ-free) at the last point where derivatives were taken.
    pub last_grad_norm: f64,
    pub regularized: bool,
    pub halved: bool,
}

// ---------------------------------------------------------------------------
// kernels

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `out[i] = g(x_iᵀB)`.
pub(crate) fn link_values(data: &Dataset, b: &[f64], out: &mut [f64]) {
    for (i, o) in out.iter_mut().enumerate() {
        *o = link_g(dot(data.row(i), b));
    }
}

/// Weighted resultant of `θᵢ − gᵢ`: returns `(S, C, Σ|w|)`.
pub(crate) fn residual_resultant(data: &Dataset, w: &[f64], g: &[f64]) -> (f64, f64, f64) {
    let mut s = 0.0;
    let mut c = 0.0;
    let mut total = 0.0;
    for ((&t, &gi), &wi) in data.response().iter().zip(g).zip(w) {
        let (sr, cr) = (t - gi).sin_cos();
        s += wi * sr;
        c += wi * cr;
        total += wi.abs();
    }
    (s, c, total)
}

/// `Σ wᵢ cos(θᵢ − μ − gᵢ)`.
pub(crate) fn weighted_cos(data: &Dataset, w: &[f64], mu: f64, g: &[f64]) -> f64 {
    data.response()
        .iter()
        .zip(g)
        .zip(w)
        .map(|((&t, &gi), &wi)| wi * (t - mu - gi).cos())
        .sum()
}

/// κ-free objective in `B`: `Σ wᵢ cos(θᵢ − μ − g(x_iᵀB))`.
pub(crate) fn b_objective(data: &Dataset, w: &[f64], mu: f64, b: &[f64]) -> f64 {
    data.response()
        .iter()
        .zip(w)
        .enumerate()
        .map(|(i, (&t, &wi))| wi * (t - mu - link_g(dot(data.row(i), b))).cos())
        .sum()
}

/// Objective, gradient and Hessian (row-major) of the κ-free objective.
pub(crate) fn b_derivatives(data: &Dataset, w: &[f64], mu: f64, b: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let d = data.dim();
    let mut grad = vec![0.0; d];
    let mut hess = vec![0.0; d * d];
    let mut f = 0.0;
    for (i, (&t, &wi)) in data.response().iter().zip(w).enumerate() {
        if wi == 0.0 {
            continue;
        }
        let x = data.row(i);
        let eta = dot(x, b);
        let (g1, g2) = link_g_deriv(eta);
        let (u, v) = (t - mu - link_g(eta)).sin_cos();
        f += wi * v;
        let gc = wi * u * g1;
        let hc = wi * (u * g2 - v * g1 * g1);
        for j in 0..d {
            grad[j] += gc * x[j];
            let hx = hc * x[j];
            for l in j..d {
                hess[j * d + l] += hx * x[l];
            }
        }
    }
    for j in 0..d {
        for l in 0..j {
            hess[j * d + l] = hess[l * d + j];
        }
    }
    (f, grad, hess)
}

/// One damped Newton ascent step on the κ-free objective. Returns the new
/// coefficients, the new objective and step details.
pub(crate) fn newton_step(
    data: &Dataset,
    w: &[f64],
    mu: f64,
    b: &[f64],
) -> (Vec<f64>, f64, StepInfo) {
    let d = b.len();
    let (f0, grad, hess) = b_derivatives(data, w, mu, b);
    let gnorm = grad.iter().map(|v| v * v).sum::<f64>().sqrt();
    let mut info = StepInfo {
        grad_norm: gnorm,
        ..StepInfo::default()
    };
    if gnorm == 0.0 || !gnorm.is_finite() {
        info.accepted = gnorm == 0.0;
        return (b.to_vec(), f0, info);
    }
    // ascent direction solves (−H) δ = ∇
    let neg_h = DMatrix::from_fn(d, d, |r, c| -hess[r * d + c]);
    let rhs = DVector::from_vec(grad);
    let Some((delta, ridged)) = solve_spd_with_ridge(&neg_h, &rhs) else {
        return (b.to_vec(), f0, info);
    };
    info.hessian_regularized = ridged;

    // Below rounding level the objective cannot rank trial points; the
    // quadratic model is exact enough to take the full step.
    let gain = rhs.dot(&delta);
    let weight: f64 = w.iter().map(|v| v.abs()).sum();
    if !ridged && gain >= 0.0 && gain <= ROUNDING_GAIN * weight {
        info.accepted = true;
        info.step_norm = delta.norm();
        let next: Vec<f64> = b.iter().zip(delta.iter()).map(|(x, y)| x + y).collect();
        return (next, f0, info);
    }

    let mut scale = 1.0;
    let mut trial = vec![0.0; d];
    for halvings in 0..=MAX_HALVINGS {
        for j in 0..d {
            trial[j] = b[j] + scale * delta[j];
        }
        let f1 = b_objective(data, w, mu, &trial);
        if f1 > f0 {
            info.accepted = true;
            info.halvings = halvings;
            info.step_norm = scale * delta.norm();
            return (trial, f1, info);
        }
        scale *= 0.5;
    }
    info.halvings = MAX_HALVINGS;
    (b.to_vec(), f0, info)
}

/// Runs damped Newton steps until the step is negligible or `max_inner`.
pub(crate) fn newton_solve(
    data: &Dataset,
    w: &[f64],
    mu: f64,
    b0: &[f64],
    max_inner: usize,
) -> (Vec<f64>, NewtonSummary) {
    let mut b = b0.to_vec();
    let mut summary = NewtonSummary::default();
    for _ in 0..max_inner {
        let (next, _, info) = newton_step(data, w, mu, &b);
        summary.steps += 1;
        summary.last_grad_norm = info.grad_norm;
        summary.regularized |= info.hessian_regularized;
        summary.halved |= info.halvings > 0;
        if !info.accepted {
            break;
        }
        let bnorm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
        b = next;
        if info.step_norm <= 1e-10 * (1.0 + bnorm) {
            break;
        }
    }
    (b, summary)
}

/// Sum over rows of `c + κ cos(θᵢ − μ − gᵢ)`.
pub(crate) fn row_loglik_sum(data: &Dataset, mu: f64, kappa: f64, g: &[f64]) -> f64 {
    let c = -TAU.ln() - log_i0_unchecked(kappa);
    data.response()
        .iter()
        .zip(g)
        .map(|(&t, &gi)| c + kappa * (t - mu - gi).cos())
        .sum()
}

/// Whether the μ, κ and B score residuals of one component are below `bound`.
/// `resultant` is the weighted `(Σ w sin(θ − g), Σ w cos(θ − g), Σ w)`; the
/// κ score is skipped when κ sits on a clamp bound.
pub(crate) fn scores_within(
    resultant: (f64, f64, f64),
    mu: Angle,
    kappa: Concentration,
    b_grad_norm: f64,
    bound: f64,
) -> bool {
    let (s, c, weight) = resultant;
    let (sm, cm) = mu.radians().sin_cos();
    let k = kappa.value();
    let mu_score = k * (s * cm - c * sm);
    let kappa_free = k > 0.0 && !kappa.is_capped();
    let kappa_score = if kappa_free {
        c * cm + s * sm - weight * crate::special::ratio_a(kappa)
    } else {
        0.0
    };
    mu_score.abs() <= bound && kappa_score.abs() <= bound && k * b_grad_norm <= bound
}

fn check_coefficients(data: &Dataset, b: &[f64]) -> Result<()> {
    if b.len() != data.dim() {
        return Err(Error::domain(format!(
            "coefficient vector has length {}, design has {} columns",
            b.len(),
            data.dim()
        )));
    }
    if b.iter().any(|v| !v.is_finite()) {
        return Err(Error::domain("coefficients must be finite"));
    }
    Ok(())
}

fn check_nonempty(data: &Dataset) -> Result<()> {
    if data.is_empty() {
        return Err(Error::domain("dataset is empty"));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// public operations

/// Log-likelihood `−n log 2π − n log I₀(κ) + κ Σ cos(θᵢ − μ − g(xᵢ*ᵀB))`.
pub fn loglik(params: &CircRegParams, data: &Dataset) -> Result<f64> {
    check_nonempty(data)?;
    check_coefficients(data, &params.coefficients)?;
    let mut g = vec![0.0; data.len()];
    link_values(data, &params.coefficients, &mut g);
    Ok(row_loglik_sum(data, params.mu.radians(), params.kappa.value(), &g))
}

/// Closed-form μ given `B`.
pub fn update_mu(b: &[f64], data: &Dataset) -> Result<Angle> {
    check_nonempty(data)?;
    check_coefficients(data, b)?;
    let mut g = vec![0.0; data.len()];
    link_values(data, b, &mut g);
    let w = vec![1.0; data.len()];
    let (s, c, total) = residual_resultant(data, &w, &g);
    resultant_direction(s, c, total)
}

/// `κ = A⁻¹(mean cos(θᵢ − μ − g(xᵢ*ᵀB)))` with clamping information.
pub fn update_kappa(mu: Angle, b: &[f64], data: &Dataset) -> Result<KappaSolve> {
    check_nonempty(data)?;
    check_coefficients(data, b)?;
    let mut g = vec![0.0; data.len()];
    link_values(data, b, &mut g);
    let w = vec![1.0; data.len()];
    solve_kappa(weighted_cos(data, &w, mu.radians(), &g) / data.len() as f64)
}

/// Gradient and Hessian of the log-likelihood with respect to `B`.
#[derive(Clone, Debug, PartialEq)]
pub struct BDerivatives {
    pub gradient: Vec<f64>,
    /// Row-major `d × d`.
    pub hessian: Vec<f64>,
}

pub(crate) fn scaled_derivatives(data: &Dataset, w: &[f64], mu: f64, kappa: f64, b: &[f64]) -> BDerivatives {
    let (_, grad, hess) = b_derivatives(data, w, mu, b);
    BDerivatives {
        gradient: grad.into_iter().map(|v| kappa * v).collect(),
        hessian: hess.into_iter().map(|v| kappa * v).collect(),
    }
}

/// `∂ℓ/∂B = κ X*ᵀĠu` and `∂²ℓ/∂B² = κ(−X*ᵀĠ²VX* + X*ᵀG̈UX*)`.
pub fn b_derivatives_at(params: &CircRegParams, data: &Dataset) -> Result<BDerivatives> {
    check_nonempty(data)?;
    check_coefficients(data, &params.coefficients)?;
    let w = vec![1.0; data.len()];
    Ok(scaled_derivatives(
        data,
        &w,
        params.mu.radians(),
        params.kappa.value(),
        &params.coefficients,
    ))
}

/// Score residuals `(∂ℓ/∂μ, ∂ℓ/∂κ, ∂ℓ/∂B)` at `params`.
#[derive(Clone, Debug, PartialEq)]
pub struct Scores {
    pub mu: f64,
    pub kappa: f64,
    pub coefficients: Vec<f64>,
}

pub fn scores(params: &CircRegParams, data: &Dataset) -> Result<Scores> {
    let derivs = b_derivatives_at(params, data)?;
    let mut g = vec![0.0; data.len()];
    link_values(data, &params.coefficients, &mut g);
    let mu = params.mu.radians();
    let k = params.kappa.value();
    let (mut s, mut c) = (0.0, 0.0);
    for (&t, &gi) in data.response().iter().zip(&g) {
        let (sr, cr) = (t - mu - gi).sin_cos();
        s += sr;
        c += cr;
    }
    let a = crate::special::ratio_a(params.kappa);
    Ok(Scores {
        mu: k * s,
        kappa: c - data.len() as f64 * a,
        coefficients: derivs.gradient,
    })
}

/// One damped Newton–Raphson update of `B` at fixed μ (κ only scales the
/// objective and does not change the direction).
pub fn nr_step_b(params: &CircRegParams, data: &Dataset) -> Result<(Vec<f64>, StepInfo)> {
    check_nonempty(data)?;
    check_coefficients(data, &params.coefficients)?;
    data.validate_design()?;
    let w = vec![1.0; data.len()];
    let (b, _, info) = newton_step(data, &w, params.mu.radians(), &params.coefficients);
    Ok((b, info))
}

/// Fits the circular regression by alternating μ/κ updates with Newton on `B`.
/// `b0` defaults to zeros.
pub fn fit_circreg(
    data: &Dataset,
    b0: Option<&[f64]>,
    options: &RegressionOptions,
) -> Result<(CircRegParams, FitDiagnostics)> {
    let d = data.dim();
    if data.len() <= d + 2 {
        return Err(Error::domain(format!(
            "need more than {} observations for {} coefficients, got {}",
            d + 2,
            d,
            data.len()
        )));
    }
    data.validate_design()?;
    let mut b = match b0 {
        Some(b0) => {
            check_coefficients(data, b0)?;
            b0.to_vec()
        }
        None => vec![0.0; d],
    };

    let n = data.len();
    let w = vec![1.0; n];
    let mut g = vec![0.0; n];
    let mut diag = FitDiagnostics::default();
    let mut mu = Angle::ZERO;
    let mut kappa = Concentration::ZERO;

    link_values(data, &b, &mut g);
    let mut resultant = residual_resultant(data, &w, &g);
    for iter in 1..=options.max_iter {
        let (s, c, total) = resultant;
        mu = resultant_direction(s, c, total)?;
        let solve = solve_kappa(weighted_cos(data, &w, mu.radians(), &g) / n as f64)?;
        diag.note_kappa(&solve);
        kappa = solve.kappa;

        let (next, summary) = newton_solve(data, &w, mu.radians(), &b, options.max_inner);
        diag.note_newton(&summary);
        b = next;

        link_values(data, &b, &mut g);
        let ll = row_loglik_sum(data, mu.radians(), kappa.value(), &g);
        resultant = residual_resultant(data, &w, &g);
        diag.iterations = iter;
        let prev = diag.loglik_trace.last().copied();
        diag.loglik_trace.push(ll);
        diag.final_loglik = ll;
        if let Some(prev) = prev {
            let stalled = (ll - prev).abs() <= options.tol * prev.abs().max(1.0);
            let bound = options.score_tol * n as f64;
            if stalled && scores_within(resultant, mu, kappa, summary.last_grad_norm, bound) {
                diag.converged = true;
                break;
            }
        }
    }

    Ok((
        CircRegParams {
            mu,
            kappa,
            coefficients: b,
        },
        diag,
    ))
}
