//! Plane-wave scattering between two plates and the zz stress contraction.
//!
//! Geometry: plate "−" occupies `z ≤ 0`, plate "+" occupies `z ≥ L`; the gap
//! is `0 < z < L`. Each transverse mode `(ω/c, k∥, φ)` carries an s-polarized
//! unit vector and two p-polarized vectors,
//!
//! ```text
//! e_s = e_k∥ × e_z,   e_p^± = (i/q)(k∥ e_z ± k⊥ e_k∥),   q = |ω|/c,
//! ```
//!
//! with wavevectors `K^± = k∥ e_k∥ ± k⊥ e_z`. Transversality fixes the
//! pairing: the up-going wave `K⁺` carries `e_p^−` and the down-going wave
//! `K⁻` carries `e_p^+` (only those satisfy `K·e_p = 0`). On the imaginary
//! frequency axis (`ω = iξ`) the substitution `k⊥ = iκ`, `κ = √(q² + k∥²)`
//! makes every propagation factor a decaying real exponential.
//!
//! The scattering part of the mode Green's function between the plates is a
//! sum of four blocks, indexed by the arrival/departure directions; with
//! round trips `W_up = R⁻R⁺`, `W_down = R⁺R⁻` and `b = e^{2ik⊥L}`:
//!
//! ```text
//! even_up     = Dyad^{up,up}    [(I − bW_up)⁻¹ W_up]   · e^{ik⊥(2L+z−z′)}
//! even_down   = Dyad^{down,down}[(I − bW_down)⁻¹ W_down] · e^{ik⊥(2L−z+z′)}
//! odd_to_up   = Dyad^{up,down}  [(I − bW_up)⁻¹ R⁻]     · e^{ik⊥(z+z′)}
//! odd_to_down = Dyad^{down,up}  [(I − bW_down)⁻¹ R⁺]   · e^{ik⊥(2L−z−z′)}
//! ```
//!
//! (the transverse phase `e^{ik∥·(x−x′)}` and the mode measure `1/8π²k⊥`
//! are left to the frequency/wavevector integral and are not included).
//!
//! The force per unit area needs only the zz component of the Maxwell
//! stress, which per dyad `u ⊗ v` is the contraction
//! `a(u, v) = u_z v_z − ½ u·v` (unconjugated products). Two families enter:
//! the plain (electric) part, weighted by `q²`, and the curl (magnetic)
//! part, with `u, v` replaced by `K × u, K × v`. For PEMC mirrors the two
//! are equal mode by mode, and the odd blocks cancel between plain and curl
//! identically, so only the even blocks push on the plates:
//!
//! ```text
//! plain(κ) = curl(κ) = −4κ² Σ_{m≥1} e^{−2mκL} cos 2mδ.
//! ```
//!
//! With the reduced radial parts defined as `part := −(κ/4)·mode part`, both
//! equal `g(κL, δ)/L³` for the force integrand `g` of [`crate::force`], and
//! the pressure assembles as `f = −(ħc/π²)∫₀^∞ dκ · (plain + curl)/2`.

use crate::force::force_integrand;
use crate::media::{pemc_reflection_from_theta, DualityAngle, ReflectionMatrix};
use nalgebra::{Matrix2, Matrix3, Vector3};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_4, TAU};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatterError {
    #[error("non-finite argument")]
    NonFiniteArgument,
    #[error("transverse wavenumber must be nonnegative (got {k_par})")]
    NegativeTransverseWavenumber { k_par: f64 },
    #[error("frequency magnitude must be nonnegative (got {value})")]
    NegativeFrequency { value: f64 },
    #[error("degenerate basis: polarization vectors are undefined at zero frequency")]
    DegenerateBasis,
    #[error("separation must be positive and finite (got {separation})")]
    InvalidSeparation { separation: f64 },
    #[error("source/observation point z = {z} lies outside the open gap (0, {separation})")]
    PointOutsideGap { z: f64, separation: f64 },
    #[error("round-trip resolvent is singular for this mode")]
    SingularResolvent,
    #[error("unknown dyadic-integral kind `{name}`")]
    UnknownDyadKind { name: String },
}

/// Whether the mode lives at a real frequency `ω` or on the imaginary axis
/// `ω = iξ` (where all gap propagation factors decay).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencyAxis {
    Real,
    Imaginary,
}

/// One transverse mode: frequency magnitude `q = |ω|/c`, transverse
/// wavenumber `k∥ ≥ 0`, azimuth `φ` of `e_k∥`, and the perpendicular
/// wavevector on the decaying branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlaneWaveBasis {
    pub omega_over_c: f64,
    pub k_par: f64,
    pub phi: f64,
    pub k_perp: Complex64,
    pub axis: FrequencyAxis,
}

impl PlaneWaveBasis {
    fn validate(omega_over_c: f64, k_par: f64, phi: f64) -> Result<(), ScatterError> {
        if !(omega_over_c.is_finite() && k_par.is_finite() && phi.is_finite()) {
            return Err(ScatterError::NonFiniteArgument);
        }
        if k_par < 0.0 {
            return Err(ScatterError::NegativeTransverseWavenumber { k_par });
        }
        if omega_over_c < 0.0 {
            return Err(ScatterError::NegativeFrequency {
                value: omega_over_c,
            });
        }
        Ok(())
    }

    /// Real-frequency mode: `k⊥ = √((ω/c)² − k∥²)`, real for propagating
    /// waves and `+i√(k∥² − (ω/c)²)` for evanescent ones.
    pub fn real_axis(omega_over_c: f64, k_par: f64, phi: f64) -> Result<Self, ScatterError> {
        Self::validate(omega_over_c, k_par, phi)?;
        let radicand = omega_over_c * omega_over_c - k_par * k_par;
        let k_perp = if radicand >= 0.0 {
            Complex64::new(radicand.sqrt(), 0.0)
        } else {
            Complex64::new(0.0, (-radicand).sqrt())
        };
        Ok(Self {
            omega_over_c,
            k_par,
            phi,
            k_perp,
            axis: FrequencyAxis::Real,
        })
    }

    /// Imaginary-frequency mode `ω = iξ`: `k⊥ = iκ` with
    /// `κ = √((ξ/c)² + k∥²)`, so `e^{ik⊥d} = e^{−κd}`.
    pub fn imaginary_axis(xi_over_c: f64, k_par: f64, phi: f64) -> Result<Self, ScatterError> {
        Self::validate(xi_over_c, k_par, phi)?;
        let kappa = f64::hypot(xi_over_c, k_par);
        Ok(Self {
            omega_over_c: xi_over_c,
            k_par,
            phi,
            k_perp: Complex64::new(0.0, kappa),
            axis: FrequencyAxis::Imaginary,
        })
    }

    /// Unit vector `e_k∥` along the transverse wavevector.
    pub fn in_plane_unit(&self) -> Vector3<Complex64> {
        let (s, c) = self.phi.sin_cos();
        Vector3::new(
            Complex64::new(c, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(0.0, 0.0),
        )
    }

    /// Wavevector of the up- (`+`) or down- (`−`) going wave,
    /// `K^± = k∥ e_k∥ ± k⊥ e_z`.
    pub fn wave_vector(&self, upward: bool) -> Vector3<Complex64> {
        let sign = if upward { 1.0 } else { -1.0 };
        let mut k = self.in_plane_unit() * Complex64::new(self.k_par, 0.0);
        k[2] = self.k_perp * sign;
        k
    }

    /// Relative residual of the dispersion relation `K·K = ±q²`
    /// (`+` on the real axis, `−` on the imaginary axis).
    pub fn dispersion_residual(&self) -> f64 {
        let q2 = self.omega_over_c * self.omega_over_c;
        let target = match self.axis {
            FrequencyAxis::Real => q2,
            FrequencyAxis::Imaginary => -q2,
        };
        let k = self.wave_vector(true);
        let kk = k.dot(&k); // unconjugated
        let scale = q2.max(self.k_par * self.k_par).max(f64::MIN_POSITIVE);
        (kk - Complex64::new(target, 0.0)).norm() / scale
    }
}

/// The polarization triplet of a mode. `e_p_minus` belongs to the up-going
/// wave and `e_p_plus` to the down-going wave (the transverse pairing).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarizationVectors {
    pub e_s: Vector3<Complex64>,
    pub e_p_plus: Vector3<Complex64>,
    pub e_p_minus: Vector3<Complex64>,
}

/// Construct `e_s` and `e_p^±` for a mode. Fails with
/// [`ScatterError::DegenerateBasis`] at zero frequency, where the `1/q`
/// normalization (and the p/s distinction itself) breaks down.
pub fn polarization_vectors(basis: &PlaneWaveBasis) -> Result<PolarizationVectors, ScatterError> {
    let q = basis.omega_over_c;
    if q == 0.0 {
        return Err(ScatterError::DegenerateBasis);
    }
    let (s, c) = basis.phi.sin_cos();
    let e_s = Vector3::new(
        Complex64::new(s, 0.0),
        Complex64::new(-c, 0.0),
        Complex64::new(0.0, 0.0),
    );
    let e_k = basis.in_plane_unit();
    let i_over_q = Complex64::new(0.0, 1.0 / q);
    let kpar = Complex64::new(basis.k_par, 0.0);
    let mut e_p_plus = e_k * (i_over_q * basis.k_perp);
    e_p_plus[2] = i_over_q * kpar;
    let mut e_p_minus = e_k * (-i_over_q * basis.k_perp);
    e_p_minus[2] = i_over_q * kpar;
    Ok(PolarizationVectors {
        e_s,
        e_p_plus,
        e_p_minus,
    })
}

/// Cross product over `Complex64` components (plain bilinear products).
pub fn ccross(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Vector3<Complex64> {
    Vector3::new(
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )
}

fn outer(a: &Vector3<Complex64>, b: &Vector3<Complex64>) -> Matrix3<Complex64> {
    a * b.transpose()
}

/// zz stress contraction of a dyad `u ⊗ v`: `u_z v_z − ½ u·v`, all products
/// bilinear (no conjugation; the modes come in conjugate pairs already).
fn zz_contraction(u: &Vector3<Complex64>, v: &Vector3<Complex64>) -> Complex64 {
    u[2] * v[2] - 0.5 * u.dot(v)
}

/// Azimuthal integrals `∫₀^{2π} dφ · e_a(φ) ⊗ e_b(φ)` of polarization
/// dyads, labelled by the pair `(a, b)` with the `±` of the p vectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadKind {
    Ss,
    PpPlus,
    PpMinus,
    SpPlus,
    SpMinus,
    PsPlus,
    PsMinus,
}

impl DyadKind {
    pub const ALL: [DyadKind; 7] = [
        DyadKind::Ss,
        DyadKind::PpPlus,
        DyadKind::PpMinus,
        DyadKind::SpPlus,
        DyadKind::SpMinus,
        DyadKind::PsPlus,
        DyadKind::PsMinus,
    ];

    /// Parse a kind from its snake_case name (for command-line use), e.g.
    /// `"ss"`, `"pp_plus"`, `"ps_minus"`.
    pub fn from_name(name: &str) -> Result<Self, ScatterError> {
        match name {
            "ss" => Ok(DyadKind::Ss),
            "pp_plus" => Ok(DyadKind::PpPlus),
            "pp_minus" => Ok(DyadKind::PpMinus),
            "sp_plus" => Ok(DyadKind::SpPlus),
            "sp_minus" => Ok(DyadKind::SpMinus),
            "ps_plus" => Ok(DyadKind::PsPlus),
            "ps_minus" => Ok(DyadKind::PsMinus),
            other => Err(ScatterError::UnknownDyadKind {
                name: other.to_string(),
            }),
        }
    }

    fn vectors<'a>(
        &self,
        pol: &'a PolarizationVectors,
    ) -> (&'a Vector3<Complex64>, &'a Vector3<Complex64>) {
        match self {
            DyadKind::Ss => (&pol.e_s, &pol.e_s),
            DyadKind::PpPlus => (&pol.e_p_plus, &pol.e_p_plus),
            DyadKind::PpMinus => (&pol.e_p_minus, &pol.e_p_minus),
            DyadKind::SpPlus => (&pol.e_s, &pol.e_p_plus),
            DyadKind::SpMinus => (&pol.e_s, &pol.e_p_minus),
            DyadKind::PsPlus => (&pol.e_p_plus, &pol.e_s),
            DyadKind::PsMinus => (&pol.e_p_minus, &pol.e_s),
        }
    }
}

/// Closed-form azimuthal dyadic integral. With `q = ω/c`:
///
/// ```text
/// ∫ e_s ⊗ e_s     = π · diag(1, 1, 0)
/// ∫ e_p^± ⊗ e_p^± = −(π/q²) [2k∥² e_zz + k⊥²(e_xx + e_yy)]
/// ∫ e_s ⊗ e_p^±   = ±(iπk⊥/q)(e_xy − e_yx)
/// ∫ e_p^± ⊗ e_s   = ∓(iπk⊥/q)(e_xy − e_yx)
/// ```
pub fn angular_dyadic_integral(
    kind: DyadKind,
    basis: &PlaneWaveBasis,
) -> Result<Matrix3<Complex64>, ScatterError> {
    let q = basis.omega_over_c;
    if q == 0.0 {
        return Err(ScatterError::DegenerateBasis);
    }
    let zero = Complex64::new(0.0, 0.0);
    let pi = Complex64::new(std::f64::consts::PI, 0.0);
    let mut out = Matrix3::zeros();
    match kind {
        DyadKind::Ss => {
            out[(0, 0)] = pi;
            out[(1, 1)] = pi;
        }
        DyadKind::PpPlus | DyadKind::PpMinus => {
            let k2 = basis.k_perp * basis.k_perp;
            let factor = -pi / (q * q);
            out[(0, 0)] = factor * k2;
            out[(1, 1)] = factor * k2;
            out[(2, 2)] = factor * 2.0 * basis.k_par * basis.k_par;
        }
        DyadKind::SpPlus | DyadKind::SpMinus | DyadKind::PsPlus | DyadKind::PsMinus => {
            let sign = match kind {
                DyadKind::SpPlus | DyadKind::PsMinus => 1.0,
                _ => -1.0,
            };
            let entry = Complex64::new(0.0, sign) * pi * basis.k_perp / q;
            out[(0, 1)] = entry;
            out[(1, 0)] = -entry;
            out[(2, 2)] = zero;
        }
    }
    Ok(out)
}

/// Trapezoidal oracle for [`angular_dyadic_integral`]: the equally weighted
/// `n`-point sum over `φ_j = 2πj/n`, spectrally exact for trigonometric
/// polynomials of degree below `n`.
pub fn angular_dyadic_quadrature(
    kind: DyadKind,
    basis: &PlaneWaveBasis,
    n_points: usize,
) -> Result<Matrix3<Complex64>, ScatterError> {
    if basis.omega_over_c == 0.0 {
        return Err(ScatterError::DegenerateBasis);
    }
    let mut sum = Matrix3::zeros();
    for j in 0..n_points {
        let phi = TAU * j as f64 / n_points as f64;
        let rotated = PlaneWaveBasis { phi, ..*basis };
        let pol = polarization_vectors(&rotated)?;
        let (u, v) = kind.vectors(&pol);
        sum += outer(u, v);
    }
    Ok(sum * Complex64::new(TAU / n_points as f64, 0.0))
}

/// The four scattering blocks of the mode Green's function between the
/// plates (dyadic 3×3 matrices; transverse phase and mode measure omitted).
#[derive(Debug, Clone, PartialEq)]
pub struct ScatterBlocks {
    pub even_up: Matrix3<Complex64>,
    pub even_down: Matrix3<Complex64>,
    pub odd_to_up: Matrix3<Complex64>,
    pub odd_to_down: Matrix3<Complex64>,
}

impl ScatterBlocks {
    /// Sum of the blocks that depend on `z − z′` only (one round trip or
    /// more: same arrival and departure directions).
    pub fn even(&self) -> Matrix3<Complex64> {
        self.even_up + self.even_down
    }

    /// Sum of the single-bounce blocks, which depend on `z + z′`.
    pub fn odd(&self) -> Matrix3<Complex64> {
        self.odd_to_up + self.odd_to_down
    }

    pub fn total(&self) -> Matrix3<Complex64> {
        self.even() + self.odd()
    }
}

fn check_gap(z: f64, separation: f64) -> Result<(), ScatterError> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(ScatterError::InvalidSeparation { separation });
    }
    if !z.is_finite() || z <= 0.0 || z >= separation {
        return Err(ScatterError::PointOutsideGap { z, separation });
    }
    Ok(())
}

/// `Σ_{λλ'} M_{λλ'} (left_λ ⊗ right_λ') · phase` over the 2-vector
/// polarization sets `left`, `right` in the order `[s, p]`.
fn dyad_block(
    m: &Matrix2<Complex64>,
    left: [&Vector3<Complex64>; 2],
    right: [&Vector3<Complex64>; 2],
    phase: Complex64,
) -> Matrix3<Complex64> {
    let mut out = Matrix3::zeros();
    for i in 0..2 {
        for j in 0..2 {
            out += outer(left[i], right[j]) * (m[(i, j)] * phase);
        }
    }
    out
}

/// Resolvent factor `(I − bW)⁻¹` for a round-trip matrix `W`.
fn gap_resolvent(w: &Matrix2<Complex64>, b: Complex64) -> Result<Matrix2<Complex64>, ScatterError> {
    (Matrix2::identity() - w * b)
        .try_inverse()
        .ok_or(ScatterError::SingularResolvent)
}

/// Scattering part of the dyadic mode Green's function for source height
/// `z_prime` and observation height `z`, both strictly inside the gap.
/// Plate `+` sits at `z = separation`, plate `−` at `z = 0`; see the module
/// docs for the four blocks and the omitted scalar factors.
pub fn green_scatter_integrand(
    basis: &PlaneWaveBasis,
    z: f64,
    z_prime: f64,
    r_plus: &ReflectionMatrix,
    r_minus: &ReflectionMatrix,
    separation: f64,
) -> Result<ScatterBlocks, ScatterError> {
    check_gap(z, separation)?;
    check_gap(z_prime, separation)?;
    let pol = polarization_vectors(basis)?;
    let up = [&pol.e_s, &pol.e_p_minus];
    let down = [&pol.e_s, &pol.e_p_plus];

    let rp = r_plus.as_matrix();
    let rm = r_minus.as_matrix();
    let w_up = rm * rp;
    let w_down = rp * rm;
    let ik = Complex64::new(0.0, 1.0) * basis.k_perp;
    let b = (ik * 2.0 * separation).exp();
    let inv_up = gap_resolvent(&w_up, b)?;
    let inv_down = gap_resolvent(&w_down, b)?;

    let phase = |path: f64| (ik * path).exp();
    let even_up = dyad_block(
        &(inv_up * w_up),
        up,
        up,
        phase(2.0 * separation + z - z_prime),
    );
    let even_down = dyad_block(
        &(inv_down * w_down),
        down,
        down,
        phase(2.0 * separation - z + z_prime),
    );
    let odd_to_up = dyad_block(&(inv_up * rm), up, down, phase(z + z_prime));
    let odd_to_down = dyad_block(
        &(inv_down * rp),
        down,
        up,
        phase(2.0 * separation - z - z_prime),
    );
    Ok(ScatterBlocks {
        even_up,
        even_down,
        odd_to_up,
        odd_to_down,
    })
}

/// Building blocks shared by the stress contractions: polarization sets,
/// wavevectors, and the resolvent-weighted even/odd mode matrices.
struct ModeMachinery {
    up: [Vector3<Complex64>; 2],
    down: [Vector3<Complex64>; 2],
    k_up: Vector3<Complex64>,
    k_down: Vector3<Complex64>,
    m_even_up: Matrix2<Complex64>,
    m_even_down: Matrix2<Complex64>,
    m_odd_to_up: Matrix2<Complex64>,
    m_odd_to_down: Matrix2<Complex64>,
    q: f64,
}

fn mode_machinery(
    xi_over_c: f64,
    k_par: f64,
    phi: f64,
    r_plus: &ReflectionMatrix,
    r_minus: &ReflectionMatrix,
    separation: f64,
) -> Result<ModeMachinery, ScatterError> {
    if !(separation.is_finite() && separation > 0.0) {
        return Err(ScatterError::InvalidSeparation { separation });
    }
    let basis = PlaneWaveBasis::imaginary_axis(xi_over_c, k_par, phi)?;
    let pol = polarization_vectors(&basis)?;
    let rp = r_plus.as_matrix();
    let rm = r_minus.as_matrix();
    let w_up = rm * rp;
    let w_down = rp * rm;
    let b = (Complex64::new(0.0, 1.0) * basis.k_perp * 2.0 * separation).exp();
    let inv_up = gap_resolvent(&w_up, b)?;
    let inv_down = gap_resolvent(&w_down, b)?;
    Ok(ModeMachinery {
        up: [pol.e_s, pol.e_p_minus],
        down: [pol.e_s, pol.e_p_plus],
        k_up: basis.wave_vector(true),
        k_down: basis.wave_vector(false),
        // Even weights carry the full round-trip phase b (z-independent in
        // the zz stress at z = z′); odd weights leave the z phases to the
        // caller.
        m_even_up: inv_up * w_up * b,
        m_even_down: inv_down * w_down * b,
        m_odd_to_up: inv_up * rm,
        m_odd_to_down: inv_down * rp,
        q: xi_over_c,
    })
}

/// Contract one block: `Σ_{λλ'} M_{λλ'} a(left_λ, right_λ')` with the
/// vectors optionally replaced by `K × e` (curl part).
fn contract(
    m: &Matrix2<Complex64>,
    left: &[Vector3<Complex64>; 2],
    right: &[Vector3<Complex64>; 2],
    curl_with: Option<(&Vector3<Complex64>, &Vector3<Complex64>)>,
) -> Complex64 {
    let mut sum = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            let a = match curl_with {
                None => zz_contraction(&left[i], &right[j]),
                Some((kl, kr)) => zz_contraction(&ccross(kl, &left[i]), &ccross(kr, &right[j])),
            };
            sum += m[(i, j)] * a;
        }
    }
    sum
}

/// Even-block zz stress of one mode on the imaginary axis, split into the
/// electric ("plain", weighted by `q²`) and magnetic ("curl", `K × e`
/// dyads) parts. Both include the factor 2 from symmetrizing source and
/// observation points. For PEMC mirrors the two parts are equal and both
/// are `−4κ² Σ_m e^{−2mκL} cos 2mδ`; see [`curl_term_equality_check`].
pub fn stress_zz_mode_parts(
    xi_over_c: f64,
    k_par: f64,
    phi: f64,
    r_plus: &ReflectionMatrix,
    r_minus: &ReflectionMatrix,
    separation: f64,
) -> Result<(Complex64, Complex64), ScatterError> {
    let m = mode_machinery(xi_over_c, k_par, phi, r_plus, r_minus, separation)?;
    let q2 = Complex64::new(m.q * m.q, 0.0);
    let plain = q2
        * 2.0
        * (contract(&m.m_even_up, &m.up, &m.up, None)
            + contract(&m.m_even_down, &m.down, &m.down, None));
    let curl = -2.0
        * (contract(&m.m_even_up, &m.up, &m.up, Some((&m.k_up, &m.k_up)))
            + contract(
                &m.m_even_down,
                &m.down,
                &m.down,
                Some((&m.k_down, &m.k_down)),
            ));
    Ok((plain, curl))
}

/// Odd-block zz stress of one mode at height `z`, split as in
/// [`stress_zz_mode_parts`]. The plain and curl parts cancel exactly
/// (`plain + curl = 0` for any mirrors), which is why single-bounce terms
/// exert no net pressure and the total is independent of `z`.
pub fn stress_zz_odd_parts(
    xi_over_c: f64,
    k_par: f64,
    phi: f64,
    r_plus: &ReflectionMatrix,
    r_minus: &ReflectionMatrix,
    separation: f64,
    z: f64,
) -> Result<(Complex64, Complex64), ScatterError> {
    check_gap(z, separation)?;
    let m = mode_machinery(xi_over_c, k_par, phi, r_plus, r_minus, separation)?;
    let kappa = f64::hypot(xi_over_c, k_par);
    let phase_up = Complex64::new((-2.0 * kappa * z).exp(), 0.0);
    let phase_down = Complex64::new((-2.0 * kappa * (separation - z)).exp(), 0.0);
    let q2 = Complex64::new(m.q * m.q, 0.0);
    let plain = q2
        * 2.0
        * (contract(&m.m_odd_to_up, &m.up, &m.down, None) * phase_up
            + contract(&m.m_odd_to_down, &m.down, &m.up, None) * phase_down);
    let curl = -2.0
        * (contract(&m.m_odd_to_up, &m.up, &m.down, Some((&m.k_up, &m.k_down))) * phase_up
            + contract(&m.m_odd_to_down, &m.down, &m.up, Some((&m.k_down, &m.k_up))) * phase_down);
    Ok((plain, curl))
}

/// Evaluate the reduced radial curl and plain parts for a PEMC pair with
/// duality difference `delta` at radial wavenumber `kappa`, and return
/// `(curl_part, plain_part)` with `part := −(κ/4) · mode part`. Both equal
/// the force integrand `g(κL, δ)/L³`, which is the bridge between the
/// scattering stress and the pressure quadrature of [`crate::force`]. The
/// mode is evaluated at the reference split `q = 3κ/5`, `k∥ = 4κ/5` and
/// azimuth `π/4`; the parts are invariant under both choices.
pub fn curl_term_equality_check(
    kappa: f64,
    delta: f64,
    separation: f64,
) -> Result<(f64, f64), ScatterError> {
    if !(kappa.is_finite() && kappa > 0.0) || !delta.is_finite() {
        return Err(ScatterError::NonFiniteArgument);
    }
    let r_plus = pemc_reflection_from_theta(DualityAngle::new(delta).expect("finite angle"));
    let r_minus = pemc_reflection_from_theta(DualityAngle::new(0.0).expect("finite angle"));
    let (plain, curl) = stress_zz_mode_parts(
        0.6 * kappa,
        0.8 * kappa,
        FRAC_PI_4,
        &r_plus,
        &r_minus,
        separation,
    )?;
    let reduce = |part: Complex64| -0.25 * kappa * part.re;
    debug_assert!(plain.im.abs() <= 1e-12 * (1.0 + plain.re.abs()));
    debug_assert!(curl.im.abs() <= 1e-12 * (1.0 + curl.re.abs()));
    Ok((reduce(curl), reduce(plain)))
}

/// The same reduced radial part obtained from the force-integrand side,
/// `g(κL, δ)/L³`: the target both members of
/// [`curl_term_equality_check`] must reproduce.
pub fn reduced_radial_part(kappa: f64, delta: f64, separation: f64) -> f64 {
    force_integrand(kappa * separation, delta) / separation.powi(3)
}
