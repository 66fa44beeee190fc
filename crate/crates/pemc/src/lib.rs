//! Casimir forces between perfect electromagnetic conductor (PEMC) plates.
//!
//! A PEMC plate is the one-parameter interpolation between a perfect electric
//! conductor (PEC) and a perfect magnetic conductor (PMC), labelled either by
//! the admixture parameter `M` or by the duality angle `θ = arccot(M)`. Two
//! plates facing each other across a vacuum gap of width `L` exert a force per
//! unit area that depends only on the duality-angle difference `δ = θ⁺ − θ⁻`:
//!
//! ```text
//! f(δ) = −(3ħc / 8π²L⁴) · Re Li₄(e^{2iδ})
//!      = −(ħc / 8π²L⁴) · [π⁴/30 − δ²(π−δ)²],   δ ∈ [0, π].
//! ```
//!
//! `δ = 0` recovers the Casimir pressure `−ħcπ²/(240 L⁴)`, `δ = π/2` the
//! Boyer (PEC–PMC) repulsion at `−7/8` of it, and the force changes sign at
//! `δ_crit = (π/2)(1 − √(1 − 2√(2/15))) ≈ 0.9613 · π/4`.
//!
//! Module map:
//! * [`specfun`] — polylogarithms on the closed unit disk and the quartic
//!   closed form of `Re Li₄` on the unit circle.
//! * [`media`] — PEMC parameterizations, reflection matrices, bi-isotropic
//!   Fresnel coefficients, and multiple-reflection resolvents.
//! * [`scatter`] — plane-wave polarization bases, the scattering part of the
//!   layer Green's tensor, and stress-tensor reductions.
//! * [`quad`] — adaptive Gauss–Kronrod quadrature used by the force integrals.
//! * [`force`] — the force per unit area via analytic, closed-form quartic,
//!   and numerical-quadrature routes, plus the zero-force angle and sum rule.
//! * [`verify`] — the cross-validation battery wired into the CLI and the
//!   acceptance tests.

pub mod force;
pub mod media;
pub mod quad;
pub mod scatter;
pub mod specfun;
pub mod verify;

pub use force::{
    delta_crit, delta_crit_bisection, force_analytic, force_integrand, force_quadrature,
    force_quartic, sum_rule, ForceError, ForceResult, Method, PlatePair, UnitSystem, HBAR, HBAR_C,
    SPEED_OF_LIGHT,
};
pub use media::{
    fresnel_cross_coeffs, m_from_theta, pemc_reflection_from_m, pemc_reflection_from_theta,
    perp_wavevector, resolvent_closed_form, resolvent_neumann, theta_from_m, BiIsotropicConstants,
    DualityAngle, MediaError, Orientation, PemcParameter, ReflectionMatrix, Resolvent,
};
pub use quad::{integrate, QuadratureConfig, QuadratureError, QuadratureOutcome};
pub use specfun::{polylog_series, re_li4_quartic, reduce_mod_2pi, SpecFunError};
