//! Adaptive Gauss–Kronrod quadrature.
//!
//! A 7-point Gauss / 15-point Kronrod pair is applied per interval; the
//! difference of the two embedded estimates drives a globally adaptive
//! bisection (always splitting the interval with the largest error bound)
//! until the summed error estimate meets the requested tolerance. Nodes,
//! weights, and the error rescaling follow the classical QUADPACK `dqk15`
//! rule, so the error estimate is conservative for smooth integrands.
//!
//! The force integrals in this crate are smooth and exponentially decaying;
//! the semi-infinite axis is truncated at a cutoff chosen by the caller, who
//! accounts for the (analytically bounded) tail separately.

use thiserror::Error;

/// Tolerances and budget for [`integrate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Relative tolerance on the integral value.
    pub rel_tol: f64,
    /// Absolute tolerance floor (controls near-zero integrals).
    pub abs_tol: f64,
    /// Maximum number of interval bisections before giving up.
    pub max_subdivisions: u32,
    /// Upper truncation point used when integrating over `[0, ∞)`.
    pub x_cutoff: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_subdivisions: 200,
            x_cutoff: 40.0,
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), QuadratureError> {
        let ok = self.rel_tol.is_finite()
            && self.rel_tol > 0.0
            && self.abs_tol.is_finite()
            && self.abs_tol >= 0.0
            && self.max_subdivisions >= 1
            && self.x_cutoff.is_finite()
            && self.x_cutoff > 0.0;
        if ok {
            Ok(())
        } else {
            Err(QuadratureError::InvalidConfig)
        }
    }
}

/// A converged integral with its error bound and the work it took.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOutcome {
    pub value: f64,
    /// Conservative bound on the absolute error of `value`.
    pub abs_error: f64,
    /// Number of bisections performed.
    pub subdivisions: u32,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("invalid quadrature configuration (tolerances must be positive and finite)")]
    InvalidConfig,
    #[error("invalid integration interval [{a}, {b}]")]
    InvalidInterval { a: f64, b: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFiniteSample { x: f64 },
    /// The subdivision budget ran out before the tolerance was met. Carries
    /// the best estimate so callers can report how close the run came.
    #[error("quadrature did not reach tolerance: value ≈ {best}, error bound {error:e} after {subdivisions} subdivisions")]
    NonConvergence {
        best: f64,
        error: f64,
        subdivisions: u32,
    },
}

// 15-point Kronrod abscissae on [-1, 1] (positive half; the rule is even).
// The nodes and weights are kept at their full published precision even
// though f64 rounds the trailing digits.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_33,
    0.949_107_912_342_758_524_526_189_684_047_85,
    0.864_864_423_359_769_072_789_712_788_640_93,
    0.741_531_185_599_394_439_863_864_773_280_79,
    0.586_087_235_467_691_130_294_144_838_258_73,
    0.405_845_151_377_397_166_906_606_412_076_96,
    0.207_784_955_007_898_467_600_689_403_773_24,
    0.0,
];

// Kronrod weights matching XGK.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_97,
    0.063_092_092_629_978_553_290_700_663_189_20,
    0.104_790_010_322_250_183_839_876_322_541_52,
    0.140_653_259_715_525_918_745_189_590_510_24,
    0.169_004_726_639_267_902_826_583_426_598_55,
    0.190_350_578_064_785_409_913_256_402_421_01,
    0.204_432_940_075_298_892_414_161_999_234_65,
    0.209_482_141_084_727_828_012_999_174_891_71,
];

// 7-point Gauss weights (for nodes XGK[1], XGK[3], XGK[5], XGK[7]).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_08,
    0.279_705_391_489_276_667_901_467_771_423_78,
    0.381_830_050_505_118_944_950_369_775_488_98,
    0.417_959_183_673_469_387_755_102_040_816_33,
];

/// One G7/K15 application on `[a, b]`: returns `(kronrod, error_bound)`.
fn gauss_kronrod_15<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
) -> Result<(f64, f64), QuadratureError> {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);

    let eval = |x: f64| -> Result<f64, QuadratureError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(QuadratureError::NonFiniteSample { x })
        }
    };

    let fc = eval(centre)?;
    let mut resg = WG[3] * fc;
    let mut resk = WGK[7] * fc;
    let mut resabs = WGK[7] * fc.abs();
    let mut samples = [0.0f64; 15];
    samples[7] = fc;

    for j in 0..7 {
        let dx = half * XGK[j];
        let f_lo = eval(centre - dx)?;
        let f_hi = eval(centre + dx)?;
        samples[j] = f_lo;
        samples[14 - j] = f_hi;
        let fsum = f_lo + f_hi;
        resk += WGK[j] * fsum;
        resabs += WGK[j] * (f_lo.abs() + f_hi.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * fsum;
        }
    }

    // Scaled deviation from the mean, for the QUADPACK error rescaling.
    let reskh = 0.5 * resk;
    let mut resasc = 0.0;
    for j in 0..8 {
        let w = WGK[j];
        if j == 7 {
            resasc += w * (samples[7] - reskh).abs();
        } else {
            resasc += w * ((samples[j] - reskh).abs() + (samples[14 - j] - reskh).abs());
        }
    }

    let half_abs = half.abs();
    let result = resk * half;
    let resabs = resabs * half_abs;
    let resasc = resasc * half_abs;
    let mut err = ((resk - resg) * half).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if floor > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok((result, err))
}

/// Integrate `f` over the finite interval `[a, b]` to the configured
/// tolerance, bisecting the worst interval until the summed Kronrod error
/// bound satisfies `err ≤ max(abs_tol, rel_tol · |value|)`.
pub fn integrate<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    config: &QuadratureConfig,
) -> Result<QuadratureOutcome, QuadratureError> {
    config.validate()?;
    if !(a.is_finite() && b.is_finite()) || a > b {
        return Err(QuadratureError::InvalidInterval { a, b });
    }
    if a == b {
        return Ok(QuadratureOutcome {
            value: 0.0,
            abs_error: 0.0,
            subdivisions: 0,
        });
    }

    #[derive(Debug, Clone, Copy)]
    struct Segment {
        a: f64,
        b: f64,
        value: f64,
        error: f64,
    }

    let (value, error) = gauss_kronrod_15(&f, a, b)?;
    let mut segments = vec![Segment { a, b, value, error }];
    let mut subdivisions = 0u32;

    loop {
        let total_value: f64 = segments.iter().map(|s| s.value).sum();
        let total_error: f64 = segments.iter().map(|s| s.error).sum();
        let target = config.abs_tol.max(config.rel_tol * total_value.abs());
        if total_error <= target {
            return Ok(QuadratureOutcome {
                value: total_value,
                abs_error: total_error,
                subdivisions,
            });
        }
        if subdivisions >= config.max_subdivisions {
            return Err(QuadratureError::NonConvergence {
                best: total_value,
                error: total_error,
                subdivisions,
            });
        }
        // Split the segment with the largest error bound (ties: first found,
        // which keeps the refinement deterministic).
        let worst = segments
            .iter()
            .enumerate()
            .max_by(|(_, s), (_, t)| s.error.total_cmp(&t.error))
            .map(|(i, _)| i)
            .expect("segment list is never empty");
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        let (lv, le) = gauss_kronrod_15(&f, seg.a, mid)?;
        let (rv, re) = gauss_kronrod_15(&f, mid, seg.b)?;
        segments.push(Segment {
            a: seg.a,
            b: mid,
            value: lv,
            error: le,
        });
        segments.push(Segment {
            a: mid,
            b: seg.b,
            value: rv,
            error: re,
        });
        subdivisions += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn low_degree_polynomials_are_exact() {
        // K15 integrates polynomials up to degree 22 exactly; G7 up to 13,
        // so the error estimate is tiny and no subdivision happens.
        let out = integrate(|x| 3.0 * x * x, 0.0, 2.0, &cfg()).unwrap();
        assert_abs_diff_eq!(out.value, 8.0, epsilon = 1e-13);
        assert_eq!(out.subdivisions, 0);
        let out = integrate(|x| x.powi(13) - 4.0 * x.powi(5), -1.0, 3.0, &cfg()).unwrap();
        let exact = (3f64.powi(14) - 1.0) / 14.0 - 4.0 * (3f64.powi(6) - 1.0) / 6.0;
        assert_abs_diff_eq!(out.value / exact, 1.0, epsilon = 1e-13);
    }

    #[test]
    fn exponential_moment_matches_gamma_value() {
        // ∫₀^∞ x³ e^{−2x} dx = 3!/2⁴ = 3/8, truncated at the default cutoff
        // (tail at x = 40 is ~e^{−80}, far below the tolerance).
        let out = integrate(|x| x.powi(3) * (-2.0 * x).exp(), 0.0, 40.0, &cfg()).unwrap();
        assert_abs_diff_eq!(out.value, 0.375, epsilon = 1e-13);
        assert!(out.abs_error < 1e-12);
    }

    #[test]
    fn bose_moment_matches_zeta_value() {
        // ∫₀^∞ x³/(e^{2x} − 1) dx = π⁴/240; the integrand is 0/0-free after
        // the x → 0 limit (it vanishes like x²/2).
        let f = |x: f64| {
            if x == 0.0 {
                0.0
            } else {
                x.powi(3) / (2.0 * x).exp_m1()
            }
        };
        let out = integrate(f, 0.0, 40.0, &cfg()).unwrap();
        assert_abs_diff_eq!(out.value, PI.powi(4) / 240.0, epsilon = 1e-12);
    }

    #[test]
    fn oscillatory_integral_converges() {
        let out = integrate(|x| (10.0 * x).sin(), 0.0, 1.0, &cfg()).unwrap();
        let exact = (1.0 - (10.0f64).cos()) / 10.0;
        assert_abs_diff_eq!(out.value, exact, epsilon = 1e-12);
        assert!(out.subdivisions > 0);
    }

    #[test]
    fn budget_exhaustion_reports_best_estimate() {
        let tight = QuadratureConfig {
            max_subdivisions: 1,
            rel_tol: 1e-15,
            abs_tol: 1e-300,
            ..cfg()
        };
        let err = integrate(|x| (50.0 * x).sin().abs(), 0.0, PI, &tight).unwrap_err();
        match err {
            QuadratureError::NonConvergence { best, error, .. } => {
                assert!(error > 0.0);
                assert!((best - 2.0).abs() < 1.0); // exact value is 2
            }
            other => panic!("expected NonConvergence, got {other:?}"),
        }
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(matches!(
            integrate(|x| x, 1.0, 0.0, &cfg()),
            Err(QuadratureError::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate(|x| x, 0.0, f64::INFINITY, &cfg()),
            Err(QuadratureError::InvalidInterval { .. })
        ));
        let bad = QuadratureConfig {
            rel_tol: 0.0,
            ..cfg()
        };
        assert!(matches!(
            integrate(|x| x, 0.0, 1.0, &bad),
            Err(QuadratureError::InvalidConfig)
        ));
        assert!(matches!(
            integrate(|x| (x - 0.5).recip(), 0.0, 1.0, &cfg()),
            Err(QuadratureError::NonFiniteSample { .. })
        ));
    }

    #[test]
    fn empty_interval_is_zero() {
        let out = integrate(|x| x * x, 1.5, 1.5, &cfg()).unwrap();
        assert_eq!(out.value, 0.0);
        assert_eq!(out.abs_error, 0.0);
    }
}
