//! PEMC plates, bi-isotropic media, and multiple-reflection resolvents.
//!
//! A perfect electromagnetic conductor (PEMC) is labelled by the admixture
//! parameter `M` (an extended real: `M = ±∞` is a PEC, `M = 0` a PMC) or
//! equivalently by the duality angle `θ = arccot(M)`. Its reflection matrix in
//! the `(s, p)` polarization basis is
//!
//! ```text
//! R(M) = 1/(1+M²) · [[1−M², −2M], [−2M, M²−1]]
//! R(θ) = [[−cos 2θ, −sin 2θ], [−sin 2θ, cos 2θ]],     M = cot θ,
//! ```
//!
//! a symmetric involution with determinant −1 (a lossless mirror that mixes
//! polarizations). The same matrix arises as the `s → ∞` limit of the Fresnel
//! coefficients of a bi-isotropic medium with `ε = sM²`, `μ = s`,
//! `ξ = ζ = sM`; [`fresnel_cross_coeffs`] evaluates those at finite constants.
//!
//! Round trips between two facing plates are resummed by the resolvent of
//! `R^± R^∓ b`, where `b` is the one-round-trip propagation factor
//! (`b = e^{−2κL}` on the imaginary frequency axis). The closed form
//!
//! ```text
//! b/(1 − 2b·cos 2δ + b²) · [[b − cos 2δ, ±sin 2δ], [∓sin 2δ, b − cos 2δ]]
//! ```
//!
//! equals `I − Σ_{n≥0} (R^± R^∓ b)^n`: it collects the multiple-reflection
//! part (every term with at least one round trip) with an overall sign. The
//! truncated Neumann sum [`resolvent_neumann`] is kept as its independent
//! oracle; see the unit tests for the exact relation.

use nalgebra::Matrix2;
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use thiserror::Error;

/// Errors for media constructors and reflection-coefficient evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MediaError {
    #[error("non-finite argument")]
    NonFiniteArgument,
    /// `M` ranges over the extended reals; NaN has no interpretation.
    #[error("PEMC parameter must not be NaN")]
    NanParameter,
    #[error("permeability mu must be nonzero")]
    ZeroPermeability,
    /// The PEMC family requires equal cross-coupling constants.
    #[error("cross couplings differ (xi = {xi}, zeta = {zeta}); reflection needs xi = zeta")]
    CrossCouplingMismatch { xi: f64, zeta: f64 },
    /// A Fresnel denominator vanished (total internal resonance of the pair).
    #[error("singular configuration: a Fresnel denominator vanished")]
    SingularConfiguration,
    /// `1 − 2b·cos2δ + b²` vanished; only possible for |b| = 1.
    #[error("round-trip resonance: resolvent denominator vanished at b = {b}")]
    Resonance { b: Complex64 },
}

/// PEMC admixture parameter `M`, an extended real (`±∞` = PEC, `0` = PMC).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PemcParameter(f64);

impl PemcParameter {
    /// Any extended real is a valid plate label; only NaN is rejected.
    pub fn new(m: f64) -> Result<Self, MediaError> {
        if m.is_nan() {
            Err(MediaError::NanParameter)
        } else {
            Ok(Self(m))
        }
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Duality angle of a plate, reduced into the canonical range `[0, π)`.
///
/// `cot` is π-periodic and the force depends only on angle differences
/// modulo π, so plate angles are stored reduced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityAngle {
    theta: f64,
}

impl DualityAngle {
    pub fn new(theta: f64) -> Result<Self, MediaError> {
        if !theta.is_finite() {
            return Err(MediaError::NonFiniteArgument);
        }
        let mut r = theta.rem_euclid(PI);
        // A tiny negative angle can round up to π itself.
        if r >= PI {
            r = 0.0;
        }
        Ok(Self { theta: r })
    }

    pub fn radians(&self) -> f64 {
        self.theta
    }
}

/// Constitutive constants of a bi-isotropic medium:
/// `D = ε₀εE + (ξ/c)H`, `B = μ₀μH + (ζ/c)E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BiIsotropicConstants {
    pub eps: f64,
    pub mu: f64,
    pub xi: f64,
    pub zeta: f64,
}

impl BiIsotropicConstants {
    pub fn new(eps: f64, mu: f64, xi: f64, zeta: f64) -> Result<Self, MediaError> {
        if ![eps, mu, xi, zeta].iter().all(|v| v.is_finite()) {
            return Err(MediaError::NonFiniteArgument);
        }
        if mu == 0.0 {
            return Err(MediaError::ZeroPermeability);
        }
        Ok(Self { eps, mu, xi, zeta })
    }

    /// The scaling family `ε = sM²`, `μ = s`, `ξ = ζ = sM` whose `s → ∞`
    /// limit is the PEMC with parameter `M`. Its index `n² = εμ − ξζ` is
    /// identically zero.
    pub fn pemc_scaled(m: f64, s: f64) -> Result<Self, MediaError> {
        Self::new(s * m * m, s, s * m, s * m)
    }

    /// Squared refractive index `n² = εμ − ξζ`.
    pub fn index_squared(&self) -> f64 {
        self.eps * self.mu - self.xi * self.zeta
    }
}

/// Reflection matrix in the `(s, p)` basis. Entries are real for the lossless
/// PEMC family and complex in general (finite constants, evanescent waves).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionMatrix {
    pub r_ss: Complex64,
    pub r_sp: Complex64,
    pub r_ps: Complex64,
    pub r_pp: Complex64,
}

impl ReflectionMatrix {
    pub fn from_real(r_ss: f64, r_sp: f64, r_ps: f64, r_pp: f64) -> Self {
        Self {
            r_ss: r_ss.into(),
            r_sp: r_sp.into(),
            r_ps: r_ps.into(),
            r_pp: r_pp.into(),
        }
    }

    /// Perfect electric conductor: `diag(−1, 1)`.
    pub fn pec() -> Self {
        Self::from_real(-1.0, 0.0, 0.0, 1.0)
    }

    /// Perfect magnetic conductor: `diag(1, −1)`.
    pub fn pmc() -> Self {
        Self::from_real(1.0, 0.0, 0.0, -1.0)
    }

    /// Absent plate (no reflection).
    pub fn zero() -> Self {
        Self::from_real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn as_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.r_ss, self.r_sp, self.r_ps, self.r_pp)
    }

    pub fn from_matrix(m: &Matrix2<Complex64>) -> Self {
        Self {
            r_ss: m[(0, 0)],
            r_sp: m[(0, 1)],
            r_ps: m[(1, 0)],
            r_pp: m[(1, 1)],
        }
    }

    /// Largest entrywise absolute difference to another matrix.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        [
            self.r_ss - other.r_ss,
            self.r_sp - other.r_sp,
            self.r_ps - other.r_ps,
            self.r_pp - other.r_pp,
        ]
        .iter()
        .map(|d| d.norm())
        .fold(0.0, f64::max)
    }
}

/// Which product order a resolvent resums: `Plus` is the series over
/// `R⁺R⁻ b`, `Minus` over `R⁻R⁺ b`. The two closed forms are transposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Plus,
    Minus,
}

/// Closed-form multiple-reflection resolvent with its defining context.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Resolvent {
    entries: Matrix2<Complex64>,
    round_trip: Complex64,
    delta: f64,
}

impl Resolvent {
    pub fn entries(&self) -> &Matrix2<Complex64> {
        &self.entries
    }

    /// One-round-trip propagation factor `b`.
    pub fn round_trip(&self) -> Complex64 {
        self.round_trip
    }

    /// Duality-angle difference `δ` of the plate pair (for Neumann sums over
    /// explicit matrices, the rotation angle inferred from `R⁺R⁻`).
    pub fn delta(&self) -> f64 {
        self.delta
    }
}

/// Duality angle from the admixture parameter: `θ = arccot(M)` mapped into
/// the canonical range, with both `M = ±∞` giving the PEC angle `θ = 0`.
pub fn theta_from_m(m: PemcParameter) -> DualityAngle {
    // arccot into (0, π): π/2 − atan(M); M = −∞ lands on π ≡ 0.
    let theta = FRAC_PI_2 - m.value().atan();
    DualityAngle::new(theta).expect("arccot of an extended real is finite")
}

/// Admixture parameter from the duality angle: `M = cot θ` (`θ = 0 ↦ +∞`).
pub fn m_from_theta(theta: DualityAngle) -> PemcParameter {
    let t = theta.radians();
    let m = if t == FRAC_PI_2 {
        0.0 // cos(π/2) rounds to 6.1e-17; the PMC point deserves exactness
    } else {
        t.cos() / t.sin()
    };
    PemcParameter::new(m).expect("cotangent of a reduced angle is not NaN")
}

/// PEMC reflection matrix from the admixture parameter.
///
/// `M = ±∞` gives exactly `diag(−1, 1)` (PEC), `M = 0` exactly `diag(1, −1)`
/// (PMC). For `|M| > 1` the entries are evaluated through `1/M` so that large
/// parameters lose no precision and infinities need no special casing.
pub fn pemc_reflection_from_m(m: PemcParameter) -> ReflectionMatrix {
    let m = m.value();
    if m.abs() <= 1.0 {
        let denom = 1.0 + m * m;
        ReflectionMatrix::from_real(
            (1.0 - m * m) / denom,
            -2.0 * m / denom,
            -2.0 * m / denom,
            (m * m - 1.0) / denom,
        )
    } else {
        // Divide numerators and denominator by M²; 1/±∞ = ±0 falls out exactly.
        let w = 1.0 / m;
        let denom = w * w + 1.0;
        ReflectionMatrix::from_real(
            (w * w - 1.0) / denom,
            -2.0 * w / denom,
            -2.0 * w / denom,
            (1.0 - w * w) / denom,
        )
    }
}

/// PEMC reflection matrix from the duality angle:
/// `[[−cos 2θ, −sin 2θ], [−sin 2θ, cos 2θ]]`.
pub fn pemc_reflection_from_theta(theta: DualityAngle) -> ReflectionMatrix {
    let two_theta = 2.0 * theta.radians();
    let (s, c) = two_theta.sin_cos();
    ReflectionMatrix::from_real(-c, -s, -s, c)
}

/// Fresnel reflection matrix of a bi-isotropic half-space with `ξ = ζ`,
/// seen from vacuum, at perpendicular wavevectors `k1_perp` (vacuum side)
/// and `k2_perp` (medium side).
///
/// The constitutive matrix `[[ε, ξ], [ξ, μ]]` is diagonalized by a duality
/// rotation: `C = rot(θ̃)·diag(ε', μ')·rot(−θ̃)`. In the rotated frame the
/// medium is an ordinary magnetodielectric, so the scalar coefficients
///
/// ```text
/// r_s = (μ'k₁ − k₂)/(μ'k₁ + k₂),   r_p = (ε'k₁ − k₂)/(ε'k₁ + k₂)
/// ```
///
/// apply, and rotating back mixes them into the cross-polarization entries:
///
/// ```text
/// r_ss = r_s cos²θ̃ + r_p sin²θ̃,   r_sp = r_ps = (r_s − r_p) sinθ̃ cosθ̃.
/// ```
///
/// For `ξ = 0` this reduces to the standard dielectric/magnetic Fresnel
/// coefficients with no polarization mixing; on the scaling family
/// `ε = sM², μ = s, ξ = sM` the rotation angle is exactly `arccot(M)` and the
/// `s → ∞` limit converges entrywise to [`pemc_reflection_from_m`] at rate
/// `O(1/s)`.
pub fn fresnel_cross_coeffs(
    mat: &BiIsotropicConstants,
    k1_perp: Complex64,
    k2_perp: Complex64,
) -> Result<ReflectionMatrix, MediaError> {
    if mat.xi != mat.zeta {
        return Err(MediaError::CrossCouplingMismatch {
            xi: mat.xi,
            zeta: mat.zeta,
        });
    }
    if !(k1_perp.is_finite() && k2_perp.is_finite()) {
        return Err(MediaError::NonFiniteArgument);
    }
    // Eigenvalues and rotation angle of the symmetric constitutive matrix.
    let avg = 0.5 * (mat.eps + mat.mu);
    let disc = f64::hypot(0.5 * (mat.eps - mat.mu), mat.xi);
    let eps_diag = avg + disc;
    let mu_diag = avg - disc;
    let tilt = 0.5 * f64::atan2(2.0 * mat.xi, mat.eps - mat.mu);

    let den_s = mu_diag * k1_perp + k2_perp;
    let den_p = eps_diag * k1_perp + k2_perp;
    if den_s.norm() == 0.0 || den_p.norm() == 0.0 {
        return Err(MediaError::SingularConfiguration);
    }
    let r_s = (mu_diag * k1_perp - k2_perp) / den_s;
    let r_p = (eps_diag * k1_perp - k2_perp) / den_p;

    let (sin_t, cos_t) = tilt.sin_cos();
    let (c2, s2, cs) = (cos_t * cos_t, sin_t * sin_t, cos_t * sin_t);
    Ok(ReflectionMatrix {
        r_ss: r_s * c2 + r_p * s2,
        r_sp: (r_s - r_p) * cs,
        r_ps: (r_s - r_p) * cs,
        r_pp: r_s * s2 + r_p * c2,
    })
}

/// Perpendicular wavevector inside a medium: `√(n²(ω/c)² − k∥²)` with
/// `n² = εμ − ξζ`, on the branch with nonnegative imaginary part so that
/// evanescent waves decay away from the interface.
pub fn perp_wavevector(mat: &BiIsotropicConstants, omega_over_c: f64, k_par: f64) -> Complex64 {
    let radicand = mat.index_squared() * omega_over_c * omega_over_c - k_par * k_par;
    if radicand >= 0.0 {
        Complex64::new(radicand.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-radicand).sqrt())
    }
}

/// Closed-form multiple-reflection resolvent for a PEMC pair with duality
/// difference `δ` and round-trip factor `b`:
///
/// ```text
/// b/(1 − 2b·cos2δ + b²) · [[b − cos2δ, ±sin2δ], [∓sin2δ, b − cos2δ]]
/// ```
///
/// (upper signs for [`Orientation::Plus`]; the other orientation is the
/// transpose). Errors at a round-trip resonance, which requires `|b| = 1`.
pub fn resolvent_closed_form(
    b: Complex64,
    delta: f64,
    orientation: Orientation,
) -> Result<Resolvent, MediaError> {
    if !b.is_finite() || !delta.is_finite() {
        return Err(MediaError::NonFiniteArgument);
    }
    let cos2d = (2.0 * delta).cos();
    let sin2d = (2.0 * delta).sin();
    let det = Complex64::new(1.0, 0.0) - 2.0 * b * cos2d + b * b;
    if det.norm() == 0.0 {
        return Err(MediaError::Resonance { b });
    }
    let factor = b / det;
    let diag = factor * (b - cos2d);
    let off = factor * sin2d;
    let entries = match orientation {
        Orientation::Plus => Matrix2::new(diag, off, -off, diag),
        Orientation::Minus => Matrix2::new(diag, -off, off, diag),
    };
    Ok(Resolvent {
        entries,
        round_trip: b,
        delta,
    })
}

/// Truncated Neumann sum `Σ_{n=0}^{terms} (R⁺R⁻ b)^n`: the partial geometric
/// series of round trips, with `terms = 0` giving the identity. Serves as the
/// independent oracle for [`resolvent_closed_form`] through
/// `closed = I − Σ_{n≥0}`, accurate to the geometric tail
/// `|b|^{terms+1}/(1 − |b|)`.
pub fn resolvent_neumann(
    r_plus: &ReflectionMatrix,
    r_minus: &ReflectionMatrix,
    b: Complex64,
    terms: u32,
) -> Resolvent {
    let round = r_plus.as_matrix() * r_minus.as_matrix();
    let step = round * b;
    let mut sum = Matrix2::identity();
    let mut power = Matrix2::identity();
    for _ in 0..terms {
        power *= step;
        sum += power;
    }
    // Rotation angle of R⁺R⁻ (= 2δ for a PEMC pair), recorded as context.
    let delta = 0.5 * f64::atan2(round[(1, 0)].re, round[(0, 0)].re);
    Resolvent {
        entries: sum,
        round_trip: b,
        delta,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn mat_max_abs(m: &Matrix2<Complex64>) -> f64 {
        m.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    #[test]
    fn arccot_maps_the_limits() {
        let pec_pos = theta_from_m(PemcParameter::new(f64::INFINITY).unwrap());
        let pec_neg = theta_from_m(PemcParameter::new(f64::NEG_INFINITY).unwrap());
        let pmc = theta_from_m(PemcParameter::new(0.0).unwrap());
        assert_eq!(pec_pos.radians(), 0.0);
        assert_eq!(pec_neg.radians(), 0.0);
        assert_eq!(pmc.radians(), FRAC_PI_2);
        assert_eq!(
            theta_from_m(PemcParameter::new(1.0).unwrap()).radians(),
            FRAC_PI_4
        );
    }

    #[test]
    fn reflection_limits_are_exact() {
        let pec = pemc_reflection_from_m(PemcParameter::new(f64::INFINITY).unwrap());
        assert_eq!(pec, ReflectionMatrix::pec());
        let pec2 = pemc_reflection_from_m(PemcParameter::new(f64::NEG_INFINITY).unwrap());
        assert_eq!(pec2, ReflectionMatrix::pec());
        let pmc = pemc_reflection_from_m(PemcParameter::new(0.0).unwrap());
        assert_eq!(pmc, ReflectionMatrix::pmc());
        // Self-dual point M = 1: pure polarization swap.
        let swap = pemc_reflection_from_m(PemcParameter::new(1.0).unwrap());
        assert_eq!(swap, ReflectionMatrix::from_real(0.0, -1.0, -1.0, 0.0));
        // θ-form at the PEC point.
        let from_theta = pemc_reflection_from_theta(DualityAngle::new(0.0).unwrap());
        assert_eq!(from_theta, ReflectionMatrix::pec());
    }

    #[test]
    fn parameterizations_agree() {
        // Log-spaced |M| grid, both signs, against the θ route.
        let mut worst: f64 = 0.0;
        for exp in -24..=24 {
            for sign in [-1.0, 1.0] {
                let m = sign * 10f64.powf(exp as f64 / 4.0);
                let p = PemcParameter::new(m).unwrap();
                let via_m = pemc_reflection_from_m(p);
                let via_theta = pemc_reflection_from_theta(theta_from_m(p));
                worst = worst.max(via_m.max_abs_diff(&via_theta));
            }
        }
        assert!(worst <= 1e-14, "parameterization mismatch {worst:e}");
    }

    #[test]
    fn m_theta_roundtrip() {
        for &m in &[0.0, 0.5, 1.0, -3.0, 1e6, f64::INFINITY] {
            let p = PemcParameter::new(m).unwrap();
            let back = m_from_theta(theta_from_m(p)).value();
            if m.is_infinite() {
                assert!(back.abs() > 1e15);
            } else if m.abs() > 1.0 {
                // arccot(M) = π/2 − atan(M) cancels for large M; the angle
                // (and hence the roundtrip) is good to ~ε/θ relative only.
                assert_abs_diff_eq!(back / m, 1.0, epsilon = 1e-9);
            } else {
                assert_abs_diff_eq!(back, m, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn fresnel_reduces_to_dielectric() {
        let glass = BiIsotropicConstants::new(2.25, 1.0, 0.0, 0.0).unwrap();
        let k1 = Complex64::new(1.0, 0.0);
        let k2 = Complex64::new(1.3, 0.0);
        let r = fresnel_cross_coeffs(&glass, k1, k2).unwrap();
        assert_abs_diff_eq!(r.r_sp.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.r_ps.norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.r_ss.re, (1.0 - 1.3) / (1.0 + 1.3), epsilon = 1e-15);
        assert_abs_diff_eq!(r.r_pp.re, (2.25 - 1.3) / (2.25 + 1.3), epsilon = 1e-15);
        // Magnetic contrast lands in r_ss even when labelled through ε < μ.
        let magnetic = BiIsotropicConstants::new(1.0, 2.0, 0.0, 0.0).unwrap();
        let r = fresnel_cross_coeffs(&magnetic, k1, k2).unwrap();
        assert_abs_diff_eq!(r.r_ss.re, (2.0 - 1.3) / (2.0 + 1.3), epsilon = 1e-14);
        assert!(r.r_sp.norm() < 1e-15);
    }

    #[test]
    fn fresnel_vacuum_interface_vanishes() {
        let vacuum = BiIsotropicConstants::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let k = Complex64::new(0.8, 0.0);
        let r = fresnel_cross_coeffs(&vacuum, k, k).unwrap();
        assert_eq!(r.max_abs_diff(&ReflectionMatrix::zero()), 0.0);
    }

    #[test]
    fn fresnel_scaled_limit_hits_the_pemc_matrix() {
        let m = 2.0;
        let target = pemc_reflection_from_m(PemcParameter::new(m).unwrap());
        let k = Complex64::new(1.0, 0.0);
        for &s in &[1e3, 1e4, 1e5, 1e6] {
            let med = BiIsotropicConstants::pemc_scaled(m, s).unwrap();
            let r = fresnel_cross_coeffs(&med, k, k).unwrap();
            let err = r.max_abs_diff(&target);
            assert!(err <= 10.0 / s, "s={s:e}: entrywise error {err:e}");
        }
    }

    #[test]
    fn fresnel_requires_matching_cross_couplings() {
        let med = BiIsotropicConstants::new(2.0, 1.0, 0.3, 0.2).unwrap();
        let k = Complex64::new(1.0, 0.0);
        assert!(matches!(
            fresnel_cross_coeffs(&med, k, k),
            Err(MediaError::CrossCouplingMismatch { .. })
        ));
    }

    #[test]
    fn perp_wavevector_branches() {
        let vacuum = BiIsotropicConstants::new(1.0, 1.0, 0.0, 0.0).unwrap();
        let prop = perp_wavevector(&vacuum, 2.0, 1.0);
        assert_abs_diff_eq!(prop.re, 3f64.sqrt(), epsilon = 1e-15);
        assert_eq!(prop.im, 0.0);
        let evan = perp_wavevector(&vacuum, 1.0, 2.0);
        assert_eq!(evan.re, 0.0);
        assert_abs_diff_eq!(evan.im, 3f64.sqrt(), epsilon = 1e-15);
        // The PEMC scaling family has n² = 0: purely evanescent interior.
        let pemc = BiIsotropicConstants::pemc_scaled(2.0, 1e4).unwrap();
        assert_eq!(pemc.index_squared(), 0.0);
        let k = perp_wavevector(&pemc, 5.0, 1.5);
        assert_eq!(k.re, 0.0);
        assert_abs_diff_eq!(k.im, 1.5, epsilon = 1e-15);
    }

    #[test]
    fn resolvent_no_round_trip_is_zero() {
        let r = resolvent_closed_form(Complex64::new(0.0, 0.0), 0.7, Orientation::Plus).unwrap();
        assert_eq!(mat_max_abs(r.entries()), 0.0);
    }

    #[test]
    fn resolvent_pec_pair_matches_scalar_geometric_series() {
        // δ = 0, b = 1/2: the closed form collapses to −b/(1−b) · I = −I.
        let r = resolvent_closed_form(Complex64::new(0.5, 0.0), 0.0, Orientation::Plus).unwrap();
        let expected = Matrix2::from_diagonal_element(Complex64::new(-1.0, 0.0));
        assert!(mat_max_abs(&(r.entries() - expected)) < 1e-15);
    }

    #[test]
    fn neumann_trivial_and_pec_sums() {
        let pec = ReflectionMatrix::pec();
        let none = resolvent_neumann(&pec, &pec, Complex64::new(0.5, 0.0), 0);
        assert_eq!(mat_max_abs(&(none.entries() - Matrix2::identity())), 0.0);
        // PEC–PEC round trip is the identity: Σ b^n → 1/(1−b) = 2 at b = 1/2.
        let sixty = resolvent_neumann(&pec, &pec, Complex64::new(0.5, 0.0), 60);
        let expected = Matrix2::from_diagonal_element(Complex64::new(2.0, 0.0));
        assert!(mat_max_abs(&(sixty.entries() - expected)) < 1e-15);
        assert_eq!(sixty.delta(), 0.0);
    }

    #[test]
    fn closed_form_is_identity_minus_neumann() {
        // closed = I − Σ_{n≥0}(R⁺R⁻b)^n, to the geometric tail of the sum.
        let mut worst: f64 = 0.0;
        for i in 0..12 {
            let delta = PI * (i as f64) / 11.0;
            let theta_plus = DualityAngle::new(delta + 0.2).unwrap();
            let theta_minus = DualityAngle::new(0.2).unwrap();
            let rp = pemc_reflection_from_theta(theta_plus);
            let rm = pemc_reflection_from_theta(theta_minus);
            for &(br, bi) in &[(0.3, 0.0), (-0.5, 0.2), (0.0, 0.55), (0.55, -0.2)] {
                let b = Complex64::new(br, bi);
                let closed = resolvent_closed_form(b, delta, Orientation::Plus).unwrap();
                let neumann = resolvent_neumann(&rp, &rm, b, 60);
                let relation = closed.entries() + neumann.entries() - Matrix2::identity();
                let tail = b.norm().powi(61) / (1.0 - b.norm());
                worst = worst.max(mat_max_abs(&relation) - tail);
            }
        }
        assert!(worst <= 1e-13, "relation violated by {worst:e}");
    }

    #[test]
    fn resolvent_orientations_are_transposes() {
        let b = Complex64::new(0.4, 0.3);
        let plus = resolvent_closed_form(b, 0.9, Orientation::Plus).unwrap();
        let minus = resolvent_closed_form(b, 0.9, Orientation::Minus).unwrap();
        let diff = plus.entries().transpose() - minus.entries();
        assert_eq!(mat_max_abs(&diff), 0.0);
    }

    #[test]
    fn resolvent_resonance_detected() {
        // b = 1, δ = 0 makes 1 − 2b + b² vanish exactly.
        assert!(matches!(
            resolvent_closed_form(Complex64::new(1.0, 0.0), 0.0, Orientation::Plus),
            Err(MediaError::Resonance { .. })
        ));
    }

    proptest! {
        #[test]
        fn pemc_reflection_is_a_symmetric_involution(theta in 0.0f64..PI) {
            let r = pemc_reflection_from_theta(DualityAngle::new(theta).unwrap());
            let m = r.as_matrix();
            // Symmetric, involutory, det −1, entries within [−1, 1].
            prop_assert_eq!(r.r_sp, r.r_ps);
            let sq = m * m;
            prop_assert!(mat_max_abs(&(sq - Matrix2::identity())) < 1e-15);
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            prop_assert!((det.re + 1.0).abs() < 1e-15 && det.im.abs() < 1e-15);
            for e in m.iter() {
                prop_assert!(e.re.abs() <= 1.0 + 1e-15);
            }
        }

        #[test]
        fn duality_angle_reduction(theta in -50.0f64..50.0) {
            let a = DualityAngle::new(theta).unwrap();
            prop_assert!((0.0..PI).contains(&a.radians()));
            // cot is π-periodic: the reduced angle represents the same plate.
            let m0 = (theta.cos() / theta.sin()).abs();
            let m1 = (a.radians().cos() / a.radians().sin()).abs();
            if m0.is_finite() && m0 < 1e6 {
                prop_assert!((m0 - m1).abs() / (1.0 + m0) < 1e-6);
            }
        }

        #[test]
        fn product_of_pemc_pair_is_a_rotation(tp in 0.0f64..PI, tm in 0.0f64..PI) {
            // R⁺R⁻ = rot(2δ): trace 2cos2δ, det +1.
            let rp = pemc_reflection_from_theta(DualityAngle::new(tp).unwrap());
            let rm = pemc_reflection_from_theta(DualityAngle::new(tm).unwrap());
            let prod = rp.as_matrix() * rm.as_matrix();
            let delta = tp - tm;
            let trace = prod[(0, 0)] + prod[(1, 1)];
            prop_assert!((trace.re - 2.0 * (2.0 * delta).cos()).abs() < 1e-12);
            let det = prod[(0, 0)] * prod[(1, 1)] - prod[(0, 1)] * prod[(1, 0)];
            prop_assert!((det.re - 1.0).abs() < 1e-12);
        }
    }
}
