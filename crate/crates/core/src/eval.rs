//! Estimation and clustering quality metrics, plus circular correlations.

use std::collections::BTreeMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::circular::{circular_mean, signed_difference};
use crate::error::{Error, Result};
use crate::mixture::MixtureParams;

/// Largest K for which permutations are enumerated.
pub const MAX_EXHAUSTIVE_K: usize = 8;

/// `permutation[k]` is the estimated component matched to true component `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentMatching {
    pub permutation: Vec<usize>,
    pub total_cost: f64,
}

fn matching_cost(estimated: &MixtureParams, truth: &MixtureParams, perm: &[usize]) -> f64 {
    truth
        .components
        .iter()
        .zip(perm)
        .map(|(t, &j)| {
            let e = &estimated.components[j];
            signed_difference(e.mu.radians(), t.mu.radians()).abs() + (e.pi - t.pi).abs()
        })
        .sum()
}

/// Exhaustive search for the permutation minimising wrapped μ distance plus
/// π distance. Ties keep the lexicographically first permutation.
pub fn match_components(estimated: &MixtureParams, truth: &MixtureParams) -> Result<ComponentMatching> {
    let k = truth.k();
    if estimated.k() != k {
        return Err(Error::domain(format!(
            "cannot match {} estimated components to {k} true components",
            estimated.k()
        )));
    }
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::domain(format!("component matching supports K ≤ {MAX_EXHAUSTIVE_K}")));
    }
    let mut best = ComponentMatching {
        permutation: (0..k).collect(),
        total_cost: f64::INFINITY,
    };
    for perm in (0..k).permutations(k) {
        let cost = matching_cost(estimated, truth, &perm);
        if cost < best.total_cost {
            best = ComponentMatching {
                permutation: perm,
                total_cost: cost,
            };
        }
    }
    Ok(best)
}

/// `estimated` reordered so that its component `k` corresponds to `truth`'s.
pub fn align_to(estimated: &MixtureParams, truth: &MixtureParams) -> Result<(MixtureParams, ComponentMatching)> {
    let matching = match_components(estimated, truth)?;
    Ok((estimated.permuted(&matching.permutation), matching))
}

/// Named per-parameter values, e.g. `pi_1`, `mu_2`, `kappa_1`, `b_2_3`
/// (component, then coefficient; both 1-based).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParameterTable {
    pub entries: Vec<(String, f64)>,
}

impl ParameterTable {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    pub fn as_map(&self) -> BTreeMap<String, f64> {
        self.entries.iter().cloned().collect()
    }
}

/// Parameter names in the canonical order used by every table.
pub fn parameter_names(k: usize, dim: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(k * (3 + dim));
    for c in 1..=k {
        names.push(format!("pi_{c}"));
        names.push(format!("mu_{c}"));
        names.push(format!("kappa_{c}"));
        for j in 1..=dim {
            names.push(format!("b_{c}_{j}"));
        }
    }
    names
}

/// Differences `estimate − truth` in canonical order; μ differences wrapped
/// into (−π, π].
pub fn parameter_errors(estimate: &MixtureParams, truth: &MixtureParams) -> Result<Vec<f64>> {
    if estimate.k() != truth.k() || estimate.dim() != truth.dim() {
        return Err(Error::domain("estimate and truth have different shapes"));
    }
    let mut out = Vec::new();
    for (e, t) in estimate.components.iter().zip(&truth.components) {
        out.push(e.pi - t.pi);
        out.push(signed_difference(e.mu.radians(), t.mu.radians()));
        out.push(e.kappa.value() - t.kappa.value());
        out.extend(e.coefficients.iter().zip(&t.coefficients).map(|(a, b)| a - b));
    }
    Ok(out)
}

/// Root mean squared error per parameter over replicates already aligned to
/// `truth` (see [`align_to`]).
pub fn rmse(replicates: &[MixtureParams], truth: &MixtureParams) -> Result<ParameterTable> {
    if replicates.is_empty() {
        return Err(Error::domain("no replicates to summarise"));
    }
    let names = parameter_names(truth.k(), truth.dim());
    let mut sums = vec![0.0; names.len()];
    for rep in replicates {
        for (s, e) in sums.iter_mut().zip(parameter_errors(rep, truth)?) {
            *s += e * e;
        }
    }
    let m = replicates.len() as f64;
    Ok(ParameterTable {
        entries: names.into_iter().zip(sums.into_iter().map(|s| (s / m).sqrt())).collect(),
    })
}

fn check_lengths(a: &[usize], b: &[usize]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::domain(format!("label vectors differ in length: {} vs {}", a.len(), b.len())));
    }
    Ok(())
}

/// Smallest mismatch fraction over all relabelings of `labels_hat`.
pub fn class_error(labels_hat: &[usize], labels_true: &[usize]) -> Result<f64> {
    check_lengths(labels_hat, labels_true)?;
    if labels_hat.is_empty() {
        return Ok(0.0);
    }
    let k = labels_hat.iter().chain(labels_true).max().map_or(0, |m| m + 1);
    if k > MAX_EXHAUSTIVE_K {
        return Err(Error::domain(format!("class_error supports at most {MAX_EXHAUSTIVE_K} labels")));
    }
    let mut table = vec![0usize; k * k];
    for (&h, &t) in labels_hat.iter().zip(labels_true) {
        table[h * k + t] += 1;
    }
    let agree = (0..k)
        .permutations(k)
        .map(|perm| (0..k).map(|h| table[h * k + perm[h]]).sum::<usize>())
        .max()
        .unwrap_or(0);
    Ok(1.0 - agree as f64 / labels_hat.len() as f64)
}

fn choose2(m: usize) -> f64 {
    let m = m as f64;
    m * (m - 1.0) / 2.0
}

/// Hubert–Arabie adjusted Rand index. When both partitions are trivial the
/// denominator vanishes; the index is then 1 for identical partitions, else 0.
pub fn adjusted_rand_index(labels_a: &[usize], labels_b: &[usize]) -> Result<f64> {
    check_lengths(labels_a, labels_b)?;
    let n = labels_a.len();
    if n < 2 {
        return Err(Error::domain("adjusted Rand index needs at least two items"));
    }
    let mut joint: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
    let mut cols: BTreeMap<usize, usize> = BTreeMap::new();
    for (&a, &b) in labels_a.iter().zip(labels_b) {
        *joint.entry((a, b)).or_default() += 1;
        *rows.entry(a).or_default() += 1;
        *cols.entry(b).or_default() += 1;
    }
    let index: f64 = joint.values().map(|&m| choose2(m)).sum();
    let sum_a: f64 = rows.values().map(|&m| choose2(m)).sum();
    let sum_b: f64 = cols.values().map(|&m| choose2(m)).sum();
    let expected = sum_a * sum_b / choose2(n);
    let max = 0.5 * (sum_a + sum_b);
    let denom = max - expected;
    if denom.abs() <= 1e-12 * max.max(1.0) {
        let identical = joint.len() == rows.len() && joint.len() == cols.len();
        return Ok(if identical { 1.0 } else { 0.0 });
    }
    Ok((index - expected) / denom)
}

/// Circular–circular correlation `Σ sin(θ−θ̄) sin(φ−φ̄) / √(Σ sin²(θ−θ̄) Σ sin²(φ−φ̄))`.
pub fn circ_circ_correlation(theta: &[f64], phi: &[f64]) -> Result<f64> {
    if theta.len() != phi.len() {
        return Err(Error::domain("samples differ in length"));
    }
    if theta.len() < 2 {
        return Err(Error::domain("correlation needs at least two observations"));
    }
    let tbar = circular_mean(theta)?.radians();
    let pbar = circular_mean(phi)?.radians();
    let (mut num, mut st, mut sp) = (0.0, 0.0, 0.0);
    for (&t, &p) in theta.iter().zip(phi) {
        let a = (t - tbar).sin();
        let b = (p - pbar).sin();
        num += a * b;
        st += a * a;
        sp += b * b;
    }
    let denom = (st * sp).sqrt();
    if !(denom > 0.0) {
        return Err(Error::Degenerate("circular correlation has a zero denominator".into()));
    }
    Ok((num / denom).clamp(-1.0, 1.0))
}

/// Pearson correlation of two linear samples.
pub fn pearson_correlation(x: &[f64], y: &[f64]) -> Result<f64> {
    if x.len() != y.len() {
        return Err(Error::domain("samples differ in length"));
    }
    if x.len() < 2 {
        return Err(Error::domain("correlation needs at least two observations"));
    }
    pearson(x, y).ok_or_else(|| Error::Degenerate("Pearson correlation has a zero variance".into()))
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    let denom = (sxx * syy).sqrt();
    (denom > 0.0).then(|| sxy / denom)
}

/// Circular–linear correlation `R = √((r_xc² + r_xs² − 2 r_xc r_xs r_cs) / (1 − r_cs²))`.
pub fn circ_linear_correlation(theta: &[f64], x: &[f64]) -> Result<f64> {
    if theta.len() != x.len() {
        return Err(Error::domain("samples differ in length"));
    }
    if theta.len() < 3 {
        return Err(Error::domain("correlation needs at least three observations"));
    }
    let cos: Vec<f64> = theta.iter().map(|t| t.cos()).collect();
    let sin: Vec<f64> = theta.iter().map(|t| t.sin()).collect();
    let degenerate = || Error::Degenerate("circular-linear correlation has a degenerate variance".into());
    let rxc = pearson(x, &cos).ok_or_else(degenerate)?;
    let rxs = pearson(x, &sin).ok_or_else(degenerate)?;
    let rcs = pearson(&cos, &sin).ok_or_else(degenerate)?;
    let denom = 1.0 - rcs * rcs;
    if !(denom > 1e-15) {
        return Err(degenerate());
    }
    let r2 = (rxc * rxc + rxs * rxs - 2.0 * rxc * rxs * rcs) / denom;
    Ok(r2.clamp(0.0, 1.0).sqrt())
}

/// Sample mean and standard deviation (n − 1 denominator; 0 for one value).
pub fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    if values.is_empty() {
        return (f64::NAN, f64::NAN);
    }
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}
