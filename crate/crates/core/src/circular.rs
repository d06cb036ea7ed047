//! Angle arithmetic, the `2·atan` link, covariate expansion and the
//! von Mises density and sampler.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{log_i0_unchecked, Concentration};

/// A direction in radians, canonically in `[0, 2π)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(from = "f64", into = "f64")]
pub struct Angle(f64);

impl Angle {
    pub const ZERO: Angle = Angle(0.0);

    /// Wraps any finite value into `[0, 2π)`.
    pub fn new(radians: f64) -> Result<Self> {
        wrap_angle(radians)
    }

    #[inline]
    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn rotate(self, delta: f64) -> Angle {
        Angle(wrap(self.0 + delta))
    }

    /// Signed difference `self − other` mapped into `(−π, π]`.
    pub fn signed_diff(self, other: Angle) -> f64 {
        signed_difference(self.0, other.0)
    }
}

impl From<f64> for Angle {
    fn from(radians: f64) -> Self {
        Angle(wrap(radians))
    }
}

impl From<Angle> for f64 {
    fn from(a: Angle) -> f64 {
        a.0
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[inline]
pub(crate) fn wrap(theta: f64) -> f64 {
    let r = theta.rem_euclid(TAU);
    // rem_euclid rounds tiny negatives up to exactly 2π
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub fn wrap_angle(theta: f64) -> Result<Angle> {
    if !theta.is_finite() {
        return Err(Error::domain(format!("angle must be finite, got {theta}")));
    }
    Ok(Angle(wrap(theta)))
}

/// `a − b` reduced to `(−π, π]`.
pub fn signed_difference(a: f64, b: f64) -> f64 {
    let d = wrap(a - b);
    if d > PI {
        d - TAU
    } else {
        d
    }
}

/// Inverse tangent link `g(t) = 2·atan(t)`, mapping ℝ onto `(−π, π)`.
#[inline]
pub fn link_g(t: f64) -> f64 {
    2.0 * t.atan()
}

/// `(g′(t), g″(t))` for the `2·atan` link.
#[inline]
pub fn link_g_deriv(t: f64) -> (f64, f64) {
    let s = 1.0 + t * t;
    (2.0 / s, -4.0 * t / (s * s))
}

/// Raw covariates for one observation.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CovariateRow {
    pub circular: Vec<f64>,
    pub linear: Vec<f64>,
}

impl CovariateRow {
    pub fn new(circular: Vec<f64>, linear: Vec<f64>) -> Self {
        CovariateRow { circular, linear }
    }

    pub fn expanded_len(&self) -> usize {
        2 * self.circular.len() + self.linear.len()
    }
}

/// Expanded design row `(cos x₁, sin x₁, …, cos x_q, sin x_q, z₁, …, z_p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpandedRow(pub Vec<f64>);

impl ExpandedRow {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

pub fn expand_row(row: &CovariateRow) -> ExpandedRow {
    let mut out = Vec::with_capacity(row.expanded_len());
    expand_into(row, &mut out);
    ExpandedRow(out)
}

pub(crate) fn expand_into(row: &CovariateRow, out: &mut Vec<f64>) {
    for &x in &row.circular {
        let (s, c) = x.sin_cos();
        out.push(c);
        out.push(s);
    }
    out.extend_from_slice(&row.linear);
}

/// Log density of `VM(μ, κ)` at `theta`.
#[inline]
pub fn vm_log_density(theta: f64, mu: f64, kappa: Concentration) -> f64 {
    let k = kappa.value();
    -(TAU.ln()) - log_i0_unchecked(k) + k * (theta - mu).cos()
}

/// Draws one angle from `VM(μ, κ)` with the Best–Fisher wrapped-Cauchy
/// rejection sampler.
pub fn vm_sample<R: Rng + ?Sized>(mu: f64, kappa: Concentration, rng: &mut R) -> Angle {
    let k = kappa.value();
    if k < 1e-8 {
        return Angle(wrap(rng.gen::<f64>() * TAU));
    }
    let tau = 1.0 + (1.0 + 4.0 * k * k).sqrt();
    let rho = (tau - (2.0 * tau).sqrt()) / (2.0 * k);
    let r = (1.0 + rho * rho) / (2.0 * rho);
    loop {
        let u1: f64 = rng.gen();
        let u2: f64 = rng.gen();
        let z = (PI * u1).cos();
        let f = (1.0 + r * z) / (r + z);
        let c = k * (r - f);
        if c * (2.0 - c) - u2 > 0.0 || (c / u2).ln() + 1.0 - c >= 0.0 {
            let u3: f64 = rng.gen();
            let dev = f.clamp(-1.0, 1.0).acos();
            let theta = if u3 > 0.5 { mu + dev } else { mu - dev };
            return Angle(wrap(theta));
        }
    }
}

/// Quadrant-corrected mean direction of the resultant `(S, C)`.
pub fn mean_direction(s: f64, c: f64) -> Result<Angle> {
    if s == 0.0 && c == 0.0 {
        return Err(Error::DegenerateDirection {
            resultant: 0.0,
            weight: 0.0,
        });
    }
    Ok(Angle(wrap(s.atan2(c))))
}

/// Like [`mean_direction`], but also rejects resultants that vanish up to
/// rounding relative to `total_weight` (the sum of |weights| that built S and C).
pub fn resultant_direction(s: f64, c: f64, total_weight: f64) -> Result<Angle> {
    let len = s.hypot(c);
    if !(len > 1e-12 * total_weight) {
        return Err(Error::DegenerateDirection {
            resultant: len,
            weight: total_weight,
        });
    }
    mean_direction(s, c)
}

/// Circular mean of a sample of angles.
pub fn circular_mean(angles: &[f64]) -> Result<Angle> {
    let (s, c) = angles.iter().fold((0.0, 0.0), |(s, c), a| {
        let (sa, ca) = a.sin_cos();
        (s + sa, c + ca)
    });
    resultant_direction(s, c, angles.len() as f64)
}
