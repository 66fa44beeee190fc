//! Casimir force per unit area between two parallel PEMC plates.
//!
//! Plates with duality angles `θ⁺`, `θ⁻` at separation `L` attract (or repel)
//! with a pressure that depends on the angles only through `δ = θ⁺ − θ⁻`:
//!
//! ```text
//! f(δ) = −(ħc/π²L⁴) ∫₀^∞ dx · x³ (e^{2x}cos2δ − 1)/(e^{4x} − 2e^{2x}cos2δ + 1)
//!      = −(3ħc/8π²L⁴) · Re Li₄(e^{2iδ})
//!      = −(ħc/8π²L⁴) · [π⁴/30 − δ²(π − δ)²],     δ ∈ [0, π].
//! ```
//!
//! The three routes are implemented independently — adaptive quadrature of
//! the mode integral, the polylogarithm series, and the quartic polynomial —
//! and cross-validate each other. Special values:
//!
//! * `δ = 0` (like plates): `f = −ħcπ²/240L⁴`, the Casimir pressure; negative
//!   values mean attraction.
//! * `δ = π/2` (PEC facing PMC): `f = +7/8 · ħcπ²/240L⁴`, Boyer's repulsion.
//! * `f(δ_crit) = 0` at `δ_crit = (π/2)(1 − √(1 − 2√(2/15))) ≈ 0.7550`,
//!   slightly below the midpoint `π/4` of the two regimes.
//! * `∫₀^{π/2} f(δ) dδ = 0`: attraction and repulsion balance exactly over a
//!   quarter period.
//!
//! `f` is even in `δ` and π-periodic; inputs are reduced accordingly except
//! in [`force_quartic`], whose polynomial form is only valid on `[0, π]` and
//! which therefore rejects anything outside it.

use crate::media::{DualityAngle, MediaError};
use crate::quad::{integrate, QuadratureConfig, QuadratureError, QuadratureOutcome};
use crate::specfun::{polylog_series, SpecFunError};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// Reduced Planck constant, J·s (2018 CODATA exact value).
pub const HBAR: f64 = 1.054_571_817e-34;
/// Speed of light in vacuum, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
/// ħc in J·m.
pub const HBAR_C: f64 = HBAR * SPEED_OF_LIGHT;

/// Output units: SI pressure (N/m², needs a separation in meters) or the
/// dimensionless combination `f L⁴ / ħc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSystem {
    Si,
    Normalized,
}

impl UnitSystem {
    pub fn as_str(&self) -> &'static str {
        match self {
            UnitSystem::Si => "si",
            UnitSystem::Normalized => "normalized",
        }
    }
}

/// Which evaluation route produced a [`ForceResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Adaptive quadrature of the mode-sum integrand.
    Quadrature,
    /// Polylogarithm series `Re Li₄(e^{2iδ})`.
    Analytic,
    /// Closed quartic polynomial in `δ`.
    Quartic,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Quadrature => "quadrature",
            Method::Analytic => "analytic",
            Method::Quartic => "quartic",
        }
    }
}

/// A force value with provenance and a conservative error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ForceResult {
    /// Pressure; negative values are attractive.
    pub value: f64,
    /// Bound on the absolute numerical error of `value` (same units).
    pub abs_error_estimate: f64,
    pub method: Method,
    pub unit_system: UnitSystem,
}

/// A pair of PEMC plates: two duality angles and a separation in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlatePair {
    pub theta_plus: DualityAngle,
    pub theta_minus: DualityAngle,
    separation: f64,
}

impl PlatePair {
    pub fn new(
        theta_plus: DualityAngle,
        theta_minus: DualityAngle,
        separation: f64,
    ) -> Result<Self, ForceError> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(ForceError::InvalidSeparation { separation });
        }
        Ok(Self {
            theta_plus,
            theta_minus,
            separation,
        })
    }

    /// A pair at unit separation, for normalized-unit work.
    pub fn normalized(theta_plus: DualityAngle, theta_minus: DualityAngle) -> Self {
        Self::new(theta_plus, theta_minus, 1.0).expect("unit separation is valid")
    }

    /// Duality-angle difference `δ = θ⁺ − θ⁻` (unreduced).
    pub fn delta(&self) -> f64 {
        self.theta_plus.radians() - self.theta_minus.radians()
    }

    pub fn separation(&self) -> f64 {
        self.separation
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ForceError {
    #[error("duality difference {delta} is outside [0, π], the domain of the quartic form")]
    QuarticDomain { delta: f64 },
    #[error("separation must be positive and finite (got {separation})")]
    InvalidSeparation { separation: f64 },
    #[error("non-finite argument")]
    NonFiniteArgument,
    #[error("tolerance must be positive and finite (got {tol})")]
    InvalidTolerance { tol: f64 },
    #[error(transparent)]
    Accuracy(#[from] QuadratureError),
    #[error(transparent)]
    Series(#[from] SpecFunError),
    #[error(transparent)]
    Media(#[from] MediaError),
}

/// Tolerance handed to the polylogarithm series by [`force_analytic`].
const SERIES_TOL: f64 = 1e-14;

/// Reduce a duality difference into `[0, π)` using evenness and
/// π-periodicity of the force.
fn reduce_delta(delta: f64) -> f64 {
    let r = delta.rem_euclid(PI);
    if r >= PI {
        0.0
    } else {
        r
    }
}

fn check_separation(separation: f64) -> Result<(), ForceError> {
    if separation.is_finite() && separation > 0.0 {
        Ok(())
    } else {
        Err(ForceError::InvalidSeparation { separation })
    }
}

/// SI prefactor ħc/L⁴ (or 1 in normalized units).
fn unit_scale(separation: f64, units: UnitSystem) -> f64 {
    match units {
        UnitSystem::Si => HBAR_C / separation.powi(4),
        UnitSystem::Normalized => 1.0,
    }
}

/// Integrand of the dimensionless mode integral,
///
/// ```text
/// g(x, δ) = x³ (e^{2x}cos2δ − 1)/(e^{4x} − 2e^{2x}cos2δ + 1)
///         = x³ Σ_{m≥1} e^{−2mx} cos 2mδ,
/// ```
///
/// evaluated in the overflow-free variable `b = e^{−2x}`:
/// `g = x³ b [(1−b) − 2sin²δ] / [(1−b)² + 4b sin²δ]`. The value at `x = 0`
/// is the (vanishing) limit; negative `x` is outside the physical domain and
/// also maps to zero.
pub fn force_integrand(x: f64, delta: f64) -> f64 {
    if x.is_nan() || x <= 0.0 {
        return 0.0;
    }
    let b = (-2.0 * x).exp();
    let one_minus_b = -(-2.0 * x).exp_m1();
    let s = delta.sin();
    let two_sin_sq = 2.0 * s * s;
    let numerator = b * (one_minus_b - two_sin_sq);
    let denominator = one_minus_b * one_minus_b + 2.0 * b * two_sin_sq;
    x.powi(3) * numerator / denominator
}

/// Force by adaptive quadrature of [`force_integrand`] over
/// `[0, x_cutoff]`, with the truncated tail bounded analytically
/// (`|tail| ≤ ∫_c^∞ x³e^{−2x}dx / (1 − e^{−2c})`) and folded into the error
/// estimate.
pub fn force_quadrature(
    delta: f64,
    separation: f64,
    units: UnitSystem,
    config: &QuadratureConfig,
) -> Result<ForceResult, ForceError> {
    if !delta.is_finite() {
        return Err(ForceError::NonFiniteArgument);
    }
    check_separation(separation)?;
    let d = reduce_delta(delta);
    let quad = integrate(|x| force_integrand(x, d), 0.0, config.x_cutoff, config)?;
    let scale = unit_scale(separation, units) / (PI * PI);
    let c = config.x_cutoff;
    let tail_moment = (-2.0 * c).exp() * (0.5 * c.powi(3) + 0.75 * c * c + 0.75 * c + 0.375);
    let tail_bound = tail_moment / -(-2.0 * c).exp_m1();
    Ok(ForceResult {
        value: -scale * quad.value,
        abs_error_estimate: scale * (quad.abs_error + tail_bound),
        method: Method::Quadrature,
        unit_system: units,
    })
}

/// Force from the polylogarithm: `f = −(3ħc/8π²L⁴)·Re Li₄(e^{2iδ})`,
/// evaluated by the direct series on the unit circle.
pub fn force_analytic(
    delta: f64,
    separation: f64,
    units: UnitSystem,
) -> Result<ForceResult, ForceError> {
    if !delta.is_finite() {
        return Err(ForceError::NonFiniteArgument);
    }
    check_separation(separation)?;
    let d = reduce_delta(delta);
    let z = Complex64::from_polar(1.0, 2.0 * d);
    let li4 = polylog_series(4, z, SERIES_TOL)?;
    let scale = unit_scale(separation, units) * 3.0 / (8.0 * PI * PI);
    Ok(ForceResult {
        value: -scale * li4.re,
        abs_error_estimate: scale * SERIES_TOL,
        method: Method::Analytic,
        unit_system: units,
    })
}

/// Force from the closed quartic form,
/// `f = −(ħc/8π²L⁴)[π⁴/30 − δ²(π−δ)²]`, valid for `δ ∈ [0, π]` only
/// (outside that interval the polynomial no longer represents the periodic
/// force, so the input is rejected rather than reduced).
pub fn force_quartic(
    delta: f64,
    separation: f64,
    units: UnitSystem,
) -> Result<ForceResult, ForceError> {
    if !delta.is_finite() {
        return Err(ForceError::NonFiniteArgument);
    }
    if !(0.0..=PI).contains(&delta) {
        return Err(ForceError::QuarticDomain { delta });
    }
    check_separation(separation)?;
    let quartic = PI.powi(4) / 30.0 - (delta * (PI - delta)).powi(2);
    let scale = unit_scale(separation, units) / (8.0 * PI * PI);
    Ok(ForceResult {
        value: -scale * quartic,
        // The polynomial is evaluated to machine precision of its own value.
        abs_error_estimate: 4.0 * f64::EPSILON * scale * quartic.abs(),
        method: Method::Quartic,
        unit_system: units,
    })
}

/// The zero-force angle `δ_crit = (π/2)(1 − √(1 − 2√(2/15)))`: the unique
/// root of `f` in `(0, π/2)`, where the attractive and repulsive regimes
/// meet.
pub fn delta_crit() -> f64 {
    FRAC_PI_2 * (1.0 - (1.0 - 2.0 * (2.0f64 / 15.0).sqrt()).sqrt())
}

/// Locate the zero-force angle by bisecting `π⁴/30 − δ²(π−δ)²` on
/// `[0, π/2]`, to absolute tolerance `tol`. Independent of [`delta_crit`],
/// for cross-validation.
pub fn delta_crit_bisection(tol: f64) -> Result<f64, ForceError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(ForceError::InvalidTolerance { tol });
    }
    let g = |d: f64| PI.powi(4) / 30.0 - (d * (PI - d)).powi(2);
    let (mut lo, mut hi) = (0.0f64, FRAC_PI_2);
    debug_assert!(g(lo) > 0.0 && g(hi) < 0.0);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // f64 midpoint reached an endpoint: cannot tighten further.
            break;
        }
        if g(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Integral of the normalized force over a quarter period,
/// `∫₀^{π/2} f(δ) L⁴/ħc dδ`, which vanishes exactly: the Casimir attraction
/// and the Boyer-side repulsion balance. Returns the quadrature outcome so
/// callers can compare the residual against its error bound.
pub fn sum_rule(config: &QuadratureConfig) -> Result<QuadratureOutcome, ForceError> {
    let normalized = |d: f64| {
        let quartic = PI.powi(4) / 30.0 - (d * (PI - d)).powi(2);
        -quartic / (8.0 * PI * PI)
    };
    Ok(integrate(normalized, 0.0, FRAC_PI_2, config)?)
}
