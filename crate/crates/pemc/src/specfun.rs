//! Polylogarithms on the closed unit disk.
//!
//! The force between two PEMC plates is controlled by `Re Li₄(e^{2iδ})`, so
//! everything here revolves around evaluating
//!
//! ```text
//! Li_n(z) = Σ_{k≥1} z^k / k^n,          |z| ≤ 1,
//! ```
//!
//! together with the closed form its real part takes on the unit circle for
//! `n = 4`:
//!
//! ```text
//! Re Li₄(e^{iφ}) = π⁴/90 − π²φ²/12 + πφ³/12 − φ⁴/48,   φ ∈ [0, 2π].
//! ```
//!
//! The series is summed directly with a certified truncation bound, so it can
//! serve as the independent oracle for the quartic closed form: on the circle
//! the tail after `K` terms is below `K^{1−n}/(n−1)` (for `n = 4`, `1/(3K³)`),
//! and strictly inside the disk it is below the geometric bound
//! `|z|^{K+1} / ((K+1)^n (1 − |z|))`. Both bounds decrease monotonically in
//! `K`, so a larger cutoff never weakens the guarantee.

use num_complex::Complex64;
use std::f64::consts::{PI, TAU};
use thiserror::Error;

/// Errors for the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecFunError {
    /// `polylog_series` is only defined on the closed unit disk.
    #[error("polylogarithm argument has modulus {modulus} > 1")]
    ModulusExceedsOne { modulus: f64 },
    /// On the unit circle the defining series diverges for n < 2.
    #[error("polylogarithm series of order {n} diverges on the unit circle")]
    DivergesOnCircle { n: u32 },
    /// Order must be a positive integer.
    #[error("polylogarithm order must be >= 1")]
    InvalidOrder,
    /// Tolerances must be positive and finite.
    #[error("invalid series tolerance {tol}")]
    InvalidTolerance { tol: f64 },
    /// Arguments must be finite.
    #[error("non-finite argument")]
    NonFiniteArgument,
    /// The requested tolerance needs more terms than the hard cap allows.
    #[error("tolerance requires ~{required_terms:.3e} series terms (cap {cap})")]
    ToleranceUnreachable { required_terms: f64, cap: u64 },
    /// The quartic closed form is only valid for φ ∈ [0, 2π].
    #[error("phase {phi} outside [0, 2*pi]; reduce with reduce_mod_2pi first")]
    PhaseOutOfRange { phi: f64 },
}

/// Hard cap on series terms; reached only for orders < 4 at extreme tolerances.
const MAX_TERMS: u64 = 50_000_000;

/// Inputs within this distance of the unit circle are treated as on-circle
/// (the integral tail bound stays valid anywhere in the closed disk).
const CIRCLE_BAND: f64 = 1e-12;

/// Certified bound on `Σ_{k>K} |z|^k / k^n`.
///
/// On the circle: integral comparison `Σ_{k>K} k^{−n} < K^{1−n}/(n−1)`.
/// Inside: every factor `k^{−n}` is at most `(K+1)^{−n}`, leaving a geometric
/// tail `|z|^{K+1} / ((K+1)^n (1−|z|))`.
fn series_tail_bound(n: u32, modulus: f64, terms: u64) -> f64 {
    let k = terms as f64;
    if modulus >= 1.0 - CIRCLE_BAND {
        k.powi(1 - n as i32) / (n as f64 - 1.0)
    } else {
        modulus.powf(k + 1.0) / ((k + 1.0).powi(n as i32) * (1.0 - modulus))
    }
}

/// `Li_n(z)` by direct summation with a certified truncation error below `tol`.
///
/// Valid on the closed unit disk; on the circle itself the order must satisfy
/// `n ≥ 2` or the series diverges. Arguments with modulus within `1e-12` of 1
/// are snapped onto the circle so that phases generated by `e^{iφ}` in floating
/// point do not leak outside the disk.
///
/// The sum is compensated (Kahan) so the accumulated rounding stays well under
/// the certified truncation bound even for the ~10⁵-term circle sums.
pub fn polylog_series(n: u32, z: Complex64, tol: f64) -> Result<Complex64, SpecFunError> {
    if n == 0 {
        return Err(SpecFunError::InvalidOrder);
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(SpecFunError::NonFiniteArgument);
    }
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(SpecFunError::InvalidTolerance { tol });
    }
    let modulus = z.norm();
    if modulus > 1.0 + 64.0 * f64::EPSILON {
        return Err(SpecFunError::ModulusExceedsOne { modulus });
    }
    let on_circle = modulus >= 1.0 - CIRCLE_BAND;
    if on_circle && n < 2 {
        return Err(SpecFunError::DivergesOnCircle { n });
    }
    // Snap floating-point round-off back onto the circle so |z|^k cannot grow.
    let z = if modulus > 1.0 { z / modulus } else { z };

    if on_circle {
        // Number of terms needed is known in advance: K^{1-n}/(n-1) <= tol.
        let required = (1.0 / ((n as f64 - 1.0) * tol)).powf(1.0 / (n as f64 - 1.0));
        if required > MAX_TERMS as f64 {
            return Err(SpecFunError::ToleranceUnreachable {
                required_terms: required,
                cap: MAX_TERMS,
            });
        }
    }

    let mut sum = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0); // Kahan compensation
    let mut z_pow = Complex64::new(1.0, 0.0);
    let mut k: u64 = 0;
    loop {
        k += 1;
        z_pow *= z;
        let term = z_pow / (k as f64).powi(n as i32);
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if series_tail_bound(n, modulus.min(1.0), k) < tol {
            return Ok(sum);
        }
        if k >= MAX_TERMS {
            return Err(SpecFunError::ToleranceUnreachable {
                required_terms: k as f64,
                cap: MAX_TERMS,
            });
        }
    }
}

/// `Re Li₄(e^{iφ})` via its quartic closed form, valid for `φ ∈ [0, 2π]`.
///
/// Callers are responsible for angle reduction — see [`reduce_mod_2pi`].
pub fn re_li4_quartic(phi: f64) -> Result<f64, SpecFunError> {
    if !phi.is_finite() || !(0.0..=TAU).contains(&phi) {
        return Err(SpecFunError::PhaseOutOfRange { phi });
    }
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    Ok(pi4 / 90.0 + phi * phi * (-pi2 / 12.0 + phi * (PI / 12.0 - phi / 48.0)))
}

/// Reduce an arbitrary finite angle into `[0, 2π)`.
pub fn reduce_mod_2pi(phi: f64) -> f64 {
    let r = phi.rem_euclid(TAU);
    // rem_euclid of a tiny negative angle can round up to 2π itself.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn pi4() -> f64 {
        PI.powi(4)
    }

    #[test]
    fn li4_at_one_is_zeta_4() {
        // Li₄(1) = ζ(4) = π⁴/90.
        let v = polylog_series(4, Complex64::new(1.0, 0.0), 1e-13).unwrap();
        assert_abs_diff_eq!(v.re, pi4() / 90.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn li4_at_minus_one_is_minus_eta_4() {
        // Alternating series oracle: Li₄(−1) = −η(4) = −7π⁴/720.
        let direct: f64 = (1..200_000u64)
            .map(|k| {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                sign / (k as f64).powi(4)
            })
            .sum();
        let v = polylog_series(4, Complex64::new(-1.0, 0.0), 1e-13).unwrap();
        assert_abs_diff_eq!(v.re, -7.0 * pi4() / 720.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.re, direct, epsilon = 1e-12);
        assert_abs_diff_eq!(v.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn li2_inside_disk_at_half() {
        // Li₂(1/2) = π²/12 − ln²2 / 2.
        let expected = PI * PI / 12.0 - 0.5 * 2f64.ln().powi(2);
        let v = polylog_series(2, Complex64::new(0.5, 0.0), 1e-14).unwrap();
        assert_abs_diff_eq!(v.re, expected, epsilon = 1e-13);
    }

    #[test]
    fn quartic_matches_series_at_right_angle() {
        // Re Li₄(i) = −7π⁴/11520 (only even powers of i contribute).
        let expected = -7.0 * pi4() / 11520.0;
        assert_abs_diff_eq!(
            re_li4_quartic(std::f64::consts::FRAC_PI_2).unwrap(),
            expected,
            epsilon = 1e-14
        );
        let series = polylog_series(4, Complex64::new(0.0, 1.0), 1e-14).unwrap();
        assert_abs_diff_eq!(series.re, expected, epsilon = 1e-13);
    }

    #[test]
    fn quartic_endpoints() {
        assert_abs_diff_eq!(re_li4_quartic(0.0).unwrap(), pi4() / 90.0, epsilon = 0.0);
        // φ = 2π gives ζ(4) back: π⁴(1/90 − 4π²·π²/(12π⁴)·...) — evaluate directly.
        assert_abs_diff_eq!(re_li4_quartic(TAU).unwrap(), pi4() / 90.0, epsilon = 1e-13);
        // φ = π: Re Li₄(−1) = −7π⁴/720.
        assert_abs_diff_eq!(
            re_li4_quartic(PI).unwrap(),
            -7.0 * pi4() / 720.0,
            epsilon = 1e-13
        );
    }

    #[test]
    fn quartic_agrees_with_series_on_grid() {
        // 200-point sweep of the circle against the series oracle.
        let mut worst: f64 = 0.0;
        for i in 0..200 {
            let phi = TAU * (i as f64 + 0.5) / 200.0;
            let closed = re_li4_quartic(phi).unwrap();
            let series = polylog_series(4, Complex64::from_polar(1.0, phi), 1e-14)
                .unwrap()
                .re;
            worst = worst.max((closed - series).abs());
        }
        assert!(
            worst <= 1e-11,
            "worst quartic-vs-series deviation {worst:e}"
        );
    }

    #[test]
    fn quartic_symmetric_about_pi() {
        // Re Li₄ is even in the phase: φ and 2π − φ must agree.
        for i in 1..100 {
            let phi = PI * (i as f64) / 100.0;
            let a = re_li4_quartic(phi).unwrap();
            let b = re_li4_quartic(TAU - phi).unwrap();
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            polylog_series(4, Complex64::new(1.5, 0.0), 1e-10),
            Err(SpecFunError::ModulusExceedsOne { .. })
        ));
        assert!(matches!(
            polylog_series(1, Complex64::from_polar(1.0, 0.3), 1e-10),
            Err(SpecFunError::DivergesOnCircle { n: 1 })
        ));
        // Inside the disk order 1 is fine: Li₁(z) = −ln(1−z).
        let v = polylog_series(1, Complex64::new(0.5, 0.0), 1e-13).unwrap();
        assert_abs_diff_eq!(v.re, std::f64::consts::LN_2, epsilon = 1e-12);
        assert!(matches!(
            re_li4_quartic(-0.1),
            Err(SpecFunError::PhaseOutOfRange { .. })
        ));
        assert!(matches!(
            re_li4_quartic(TAU + 0.1),
            Err(SpecFunError::PhaseOutOfRange { .. })
        ));
        assert!(matches!(
            re_li4_quartic(f64::NAN),
            Err(SpecFunError::PhaseOutOfRange { .. })
        ));
        assert!(matches!(
            polylog_series(4, Complex64::new(0.5, 0.0), 0.0),
            Err(SpecFunError::InvalidTolerance { .. })
        ));
    }

    #[test]
    fn tail_bound_monotone_in_cutoff() {
        // Increasing the cutoff never weakens the certificate.
        for &modulus in &[0.3, 0.9, 1.0] {
            let mut prev = f64::INFINITY;
            for k in (10..10_000u64).step_by(97) {
                let b = series_tail_bound(4, modulus, k);
                assert!(b <= prev, "bound increased at K={k} for |z|={modulus}");
                prev = b;
            }
        }
    }

    proptest! {
        #[test]
        fn reduction_lands_in_range(phi in -1e6f64..1e6) {
            let r = reduce_mod_2pi(phi);
            prop_assert!((0.0..TAU).contains(&r));
            // Same point on the circle: compare complex exponentials.
            let a = Complex64::from_polar(1.0, phi);
            let b = Complex64::from_polar(1.0, r);
            prop_assert!((a - b).norm() < 1e-7);
        }

        #[test]
        fn series_tolerance_is_respected(phi in 0.0f64..TAU) {
            // A loose evaluation must sit within its certificate of a tight one.
            let z = Complex64::from_polar(1.0, phi);
            let tight = polylog_series(4, z, 1e-13).unwrap();
            let loose = polylog_series(4, z, 1e-6).unwrap();
            prop_assert!((tight - loose).norm() <= 1e-6 + 1e-12);
        }
    }
}
