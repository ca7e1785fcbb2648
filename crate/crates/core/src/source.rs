//! SPDC photon-pair source: the four joint spectral amplitudes, their
//! normalization and the time-frequency correlation regime.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{positive_finite, Error, Result};
use crate::quadrature::GaussLegendre;
use crate::units;

/// Two-photon state family.
///
/// `Sd`/`Si`: sine-cardinal spectrum with / without the walk-off phase that
/// fixes the photon arrival order. `Gd`/`Gi`: the Gaussian-filtered analogues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKind {
    Sd,
    Si,
    Gd,
    Gi,
}

impl StateKind {
    pub const ALL: [StateKind; 4] = [StateKind::Sd, StateKind::Si, StateKind::Gd, StateKind::Gi];

    pub fn token(self) -> &'static str {
        match self {
            StateKind::Sd => "sd",
            StateKind::Si => "si",
            StateKind::Gd => "gd",
            StateKind::Gi => "gi",
        }
    }

    /// Walk-off phase present: only one excitation ordering survives.
    pub fn is_distinguishable(self) -> bool {
        matches!(self, StateKind::Sd | StateKind::Gd)
    }

    pub fn is_gaussian(self) -> bool {
        matches!(self, StateKind::Gd | StateKind::Gi)
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sd" => Ok(StateKind::Sd),
            "si" => Ok(StateKind::Si),
            "gd" => Ok(StateKind::Gd),
            "gi" => Ok(StateKind::Gi),
            other => Err(Error::InvalidSpec(format!(
                "unknown state `{other}` (expected sd, si, gd or gi)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CorrelationRegime {
    AntiCorrelated,
    Uncorrelated,
    Correlated,
}

/// Type-II SPDC source under group-velocity matching.
///
/// The crystal enters only through the entanglement time; the common
/// pump-index phase is dropped since it cancels in every probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpdcSource {
    /// rad/s
    pub omega_s0: f64,
    /// rad/s
    pub omega_i0: f64,
    /// Pump duration `T_p`, s.
    pub t_pump: f64,
    /// Entanglement time `T_e`, s.
    pub t_ent: f64,
    /// Effective field area, m².
    pub area: f64,
}

impl SpdcSource {
    /// Width ratio of the Gaussian stand-in for the sinc phase-matching function.
    pub const ALPHA: f64 = 0.455;

    /// Central wavelength of the degenerate default source, nm.
    pub const DEFAULT_LAMBDA_NM: f64 = 810.0;

    pub fn new(omega_s0: f64, omega_i0: f64, t_pump: f64, t_ent: f64, area: f64) -> Result<Self> {
        Ok(Self {
            omega_s0: positive_finite("omega_s0", omega_s0)?,
            omega_i0: positive_finite("omega_i0", omega_i0)?,
            t_pump: positive_finite("t_pump", t_pump)?,
            t_ent: positive_finite("t_ent", t_ent)?,
            area: positive_finite("area", area)?,
        })
    }

    pub fn from_wavelengths(
        lambda_s_nm: f64,
        lambda_i_nm: f64,
        t_pump: f64,
        t_ent: f64,
        area: f64,
    ) -> Result<Self> {
        positive_finite("lambda_s_nm", lambda_s_nm)?;
        positive_finite("lambda_i_nm", lambda_i_nm)?;
        Self::new(
            units::angular_frequency_from_nm(lambda_s_nm),
            units::angular_frequency_from_nm(lambda_i_nm),
            t_pump,
            t_ent,
            area,
        )
    }

    /// Degenerate 810 nm source.
    pub fn degenerate(t_pump: f64, t_ent: f64, area: f64) -> Result<Self> {
        Self::from_wavelengths(Self::DEFAULT_LAMBDA_NM, Self::DEFAULT_LAMBDA_NM, t_pump, t_ent, area)
    }

    pub fn alpha(&self) -> f64 {
        Self::ALPHA
    }

    pub fn with_t_ent(&self, t_ent: f64) -> Result<Self> {
        Self::new(self.omega_s0, self.omega_i0, self.t_pump, t_ent, self.area)
    }

    /// `T_p / α`, the entanglement time of the factorable state.
    pub fn uncorrelated_t_ent(&self) -> f64 {
        self.t_pump / Self::ALPHA
    }

    /// Mean central frequency; `ω₀` for a degenerate source.
    pub fn omega_mean(&self) -> f64 {
        0.5 * (self.omega_s0 + self.omega_i0)
    }

    /// Normalization constant of the mode function (units of s).
    pub fn amplitude_norm(&self, kind: StateKind) -> f64 {
        let (te, tp) = (self.t_ent, self.t_pump);
        if kind.is_gaussian() {
            (4.0 * Self::ALPHA * te * tp / PI).sqrt()
        } else {
            (4.0 * te * tp / (PI * (2.0 * PI).sqrt())).sqrt()
        }
    }
}

/// Unnormalized sinc, `sin(x)/x`.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// Joint spectral amplitude `Φ(Ω_s, Ω_i)` at detunings from the central
/// frequencies (rad/s).
///
/// Distinguishable kinds carry the reduced walk-off phase
/// `exp(-i T_e (Ω_i − Ω_s))`.
pub fn jsa(kind: StateKind, src: &SpdcSource, omega_s: f64, omega_i: f64) -> Complex64 {
    let sum = omega_s + omega_i;
    let diff = omega_i - omega_s;
    let (tp, te) = (src.t_pump, src.t_ent);
    let pump = (-(tp * sum) * (tp * sum)).exp();
    let shape = if kind.is_gaussian() {
        let a = SpdcSource::ALPHA * te * diff;
        (-a * a).exp()
    } else {
        sinc(te * diff)
    };
    let real = src.amplitude_norm(kind) * pump * shape;
    if kind.is_distinguishable() {
        Complex64::from_polar(real, -te * diff)
    } else {
        Complex64::new(real, 0.0)
    }
}

/// Sinc lobes kept on each side of the difference axis in [`norm`].
const SINC_LOBES: usize = 2000;
/// Gaussian standard deviations kept on each side in [`norm`].
const GAUSS_WIDTHS: f64 = 8.0;
const NORM_RULE: usize = 8;
const NORM_REL_TOL: f64 = 1e-7;

/// `∫∫ |Φ|² dΩ_s dΩ_i` by tensor-product Gauss–Legendre quadrature in
/// sum/difference coordinates, refined by panel doubling until two passes agree.
///
/// The sinc tails beyond [`SINC_LOBES`] lobes are dropped, which biases the
/// sinc kinds low by about `1/(2000 π²) ≈ 5e-5`.
pub fn norm(kind: StateKind, src: &SpdcSource) -> Result<f64> {
    let gl = GaussLegendre::new(NORM_RULE);
    let sum_half = GAUSS_WIDTHS / (2.0 * src.t_pump);
    let (diff_half, diff_panels) = if kind.is_gaussian() {
        (GAUSS_WIDTHS / (2.0 * SpdcSource::ALPHA * src.t_ent), 16)
    } else {
        (SINC_LOBES as f64 * PI / src.t_ent, 2 * SINC_LOBES)
    };

    let pass = |refine: usize| -> f64 {
        let (s_nodes, s_weights) = gl.composite(-sum_half, sum_half, 12 * refine);
        let (d_nodes, d_weights) = gl.composite(-diff_half, diff_half, diff_panels * refine);
        let mut total = 0.0;
        for (s, ws) in s_nodes.iter().zip(&s_weights) {
            let mut row = 0.0;
            for (d, wd) in d_nodes.iter().zip(&d_weights) {
                let phi = jsa(kind, src, 0.5 * (s - d), 0.5 * (s + d));
                row += wd * phi.norm_sqr();
            }
            total += ws * row;
        }
        // dΩ_s dΩ_i = ½ dS dD
        0.5 * total
    };

    let mut previous = pass(1);
    for refine in [2, 4] {
        let current = pass(refine);
        if (current - previous).abs() <= NORM_REL_TOL * current.abs() {
            return Ok(current);
        }
        previous = current;
    }
    Err(Error::Quadrature(format!(
        "normalization of {kind} did not settle after panel refinement"
    )))
}

/// Correlation regime relative to the factorable point `T_e = T_p/α`.
pub fn classify(src: &SpdcSource) -> CorrelationRegime {
    let boundary = src.uncorrelated_t_ent();
    let tol = 1e-6 * boundary;
    if src.t_ent < boundary - tol {
        CorrelationRegime::AntiCorrelated
    } else if src.t_ent > boundary + tol {
        CorrelationRegime::Correlated
    } else {
        CorrelationRegime::Uncorrelated
    }
}
