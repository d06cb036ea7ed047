//! Modified Bessel functions of the first kind (orders 0 and 1) and the
//! mean resultant length ratio `A(κ) = I₁(κ)/I₀(κ)` with its inverse.
//!
//! Below [`SERIES_CROSSOVER`] the ascending power series is summed directly;
//! above it the Hankel asymptotic expansion is used with the `eˣ/√(2πx)`
//! prefactor factored out, so the ratio and the logarithm never overflow.

use std::fmt;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest concentration any estimator returns.
pub const KAPPA_CAP: f64 = 1e5;

/// Argument at which evaluation switches from power series to asymptotics.
pub const SERIES_CROSSOVER: f64 = 30.0;

static R_MAX: LazyLock<f64> = LazyLock::new(|| mean_resultant_length(KAPPA_CAP));

/// `A(KAPPA_CAP)`: mean resultant lengths at or above this map to the cap.
pub fn r_max() -> f64 {
    *R_MAX
}

/// Von Mises concentration, `0 ≤ κ ≤ KAPPA_CAP`.
#[derive(Clone, Copy, Debug, Default, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Concentration(f64);

impl Concentration {
    pub const ZERO: Concentration = Concentration(0.0);
    pub const CAP: Concentration = Concentration(KAPPA_CAP);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || !(0.0..=KAPPA_CAP).contains(&value) {
            return Err(Error::domain(format!(
                "concentration must lie in [0, {KAPPA_CAP}], got {value}"
            )));
        }
        Ok(Concentration(value))
    }

    /// Saturates into `[0, KAPPA_CAP]`; NaN maps to zero.
    pub fn clamped(value: f64) -> Self {
        if value.is_nan() {
            return Concentration::ZERO;
        }
        Concentration(value.clamp(0.0, KAPPA_CAP))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_capped(self) -> bool {
        self.0 >= KAPPA_CAP
    }
}

impl TryFrom<f64> for Concentration {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Concentration::new(value)
    }
}

impl From<Concentration> for f64 {
    fn from(k: Concentration) -> f64 {
        k.0
    }
}

impl fmt::Display for Concentration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn check_arg(x: f64) -> Result<()> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::domain(format!(
            "Bessel argument must be finite and non-negative, got {x}"
        )));
    }
    Ok(())
}

fn i0_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut m = 1.0;
    loop {
        term *= y / (m * m);
        sum += term;
        if term <= sum * 1e-17 {
            return sum;
        }
        m += 1.0;
    }
}

fn i1_series(x: f64) -> f64 {
    let y = 0.25 * x * x;
    let mut term = 0.5 * x;
    let mut sum = term;
    let mut m = 1.0;
    loop {
        term *= y / (m * (m + 1.0));
        sum += term;
        if term <= sum * 1e-17 {
            return sum;
        }
        m += 1.0;
    }
}

/// Hankel sum `Σ_k (−1)^k a_k(ν) / x^k` for `I_ν(x) ≈ eˣ/√(2πx) · sum`,
/// truncated at the smallest term.
fn hankel_sum(order: u32, x: f64) -> f64 {
    let mu = 4.0 * f64::from(order * order);
    let mut term = 1.0_f64;
    let mut sum = 1.0;
    for k in 1..200 {
        let odd = f64::from(2 * k - 1);
        let next = -term * (mu - odd * odd) / (8.0 * f64::from(k) * x);
        if next.abs() >= term.abs() {
            break;
        }
        term = next;
        sum += term;
        if term.abs() <= sum.abs() * 1e-17 {
            break;
        }
    }
    sum
}

/// `I₀(x)`. Overflows to infinity beyond x ≈ 713; use [`log_bessel_i0`] there.
pub fn bessel_i0(x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_CROSSOVER {
        Ok(i0_series(x))
    } else {
        Ok(x.exp() / (2.0 * std::f64::consts::PI * x).sqrt() * hankel_sum(0, x))
    }
}

/// `log I₀(x)`, finite for every finite non-negative argument.
pub fn log_bessel_i0(x: f64) -> Result<f64> {
    check_arg(x)?;
    Ok(log_i0_unchecked(x))
}

#[inline]
pub(crate) fn log_i0_unchecked(x: f64) -> f64 {
    if x <= SERIES_CROSSOVER {
        i0_series(x).ln()
    } else {
        x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + hankel_sum(0, x).ln()
    }
}

pub fn bessel_i1(x: f64) -> Result<f64> {
    check_arg(x)?;
    if x <= SERIES_CROSSOVER {
        Ok(i1_series(x))
    } else {
        Ok(x.exp() / (2.0 * std::f64::consts::PI * x).sqrt() * hankel_sum(1, x))
    }
}

/// `A(κ) = I₁(κ)/I₀(κ)`.
pub fn ratio_a(kappa: Concentration) -> f64 {
    mean_resultant_length(kappa.value())
}

/// `A(κ)` for a raw non-negative argument (not limited to the cap).
pub fn ratio_a_raw(kappa: f64) -> Result<f64> {
    check_arg(kappa)?;
    Ok(mean_resultant_length(kappa))
}

fn mean_resultant_length(kappa: f64) -> f64 {
    if kappa == 0.0 {
        0.0
    } else if kappa <= SERIES_CROSSOVER {
        i1_series(kappa) / i0_series(kappa)
    } else {
        hankel_sum(1, kappa) / hankel_sum(0, kappa)
    }
}

/// `A'(κ) = 1 − A/κ − A²`.
fn ratio_a_derivative(kappa: f64, a: f64) -> f64 {
    if kappa < 1e-8 {
        0.5
    } else {
        1.0 - a / kappa - a * a
    }
}

/// Which bound, if any, the inverse hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KappaClamp {
    None,
    /// Mean resultant length was negative; κ set to 0.
    Zero,
    /// Mean resultant length reached `A(KAPPA_CAP)`; κ set to the cap.
    Cap,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KappaSolve {
    pub kappa: Concentration,
    pub clamp: KappaClamp,
}

/// `A⁻¹(r)` with the clamping rules: `r ≤ 0 → 0`, `r ≥ A(KAPPA_CAP) → KAPPA_CAP`.
pub fn ratio_a_inverse(r: f64) -> Result<Concentration> {
    solve_kappa(r).map(|s| s.kappa)
}

/// Same as [`ratio_a_inverse`] but reports whether a bound was applied.
pub fn solve_kappa(r: f64) -> Result<KappaSolve> {
    if !r.is_finite() {
        return Err(Error::domain(format!(
            "mean resultant length must be finite, got {r}"
        )));
    }
    if r <= 0.0 {
        let clamp = if r < 0.0 { KappaClamp::Zero } else { KappaClamp::None };
        return Ok(KappaSolve {
            kappa: Concentration::ZERO,
            clamp,
        });
    }
    if r >= r_max() {
        return Ok(KappaSolve {
            kappa: Concentration::CAP,
            clamp: KappaClamp::Cap,
        });
    }

    // Bracketed Newton; A is increasing and concave on (0, ∞).
    let (mut lo, mut hi) = (0.0_f64, KAPPA_CAP);
    let mut kappa = (r * (2.0 - r * r) / (1.0 - r * r)).clamp(1e-12, KAPPA_CAP * 0.5);
    for _ in 0..200 {
        let a = mean_resultant_length(kappa);
        let f = a - r;
        if f == 0.0 {
            break;
        }
        if f > 0.0 {
            hi = kappa;
        } else {
            lo = kappa;
        }
        let slope = ratio_a_derivative(kappa, a);
        let mut next = kappa - f / slope;
        if !(next > lo && next < hi) || !next.is_finite() {
            next = if lo > 0.0 && hi / lo > 4.0 {
                (lo * hi).sqrt()
            } else {
                0.5 * (lo + hi)
            };
        }
        let done = (next - kappa).abs() <= 1e-15 * kappa.max(1e-300);
        kappa = next;
        if done || hi - lo <= 4.0 * f64::EPSILON * hi {
            break;
        }
    }
    Ok(KappaSolve {
        kappa: Concentration::clamped(kappa),
        clamp: KappaClamp::None,
    })
}
