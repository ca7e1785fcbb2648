//! Closed-form two-photon excitation probabilities for the four SPDC states.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::acceptor::EigenAcceptor;
use crate::error::{Error, Result};
use crate::source::{sinc, SpdcSource, StateKind};
use crate::specfun::{f_pm, plasma_dispersion, Branch};
pub use crate::units::{PhysicalConstants, CODATA};

/// How the doubly-excited frequency `ω_f` enters the resonance factor.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResonancePolicy {
    /// `ω_f = ω_a + ω_b` from the acceptor, possibly slightly detuned.
    #[default]
    Nominal,
    /// `ω_f := ω_s⁰ + ω_i⁰`, exact two-photon resonance.
    Enforced,
}

impl ResonancePolicy {
    pub fn omega_f(self, acc: &EigenAcceptor, src: &SpdcSource) -> f64 {
        match self {
            ResonancePolicy::Nominal => acc.omega_f,
            ResonancePolicy::Enforced => src.omega_s0 + src.omega_i0,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            ResonancePolicy::Nominal => "nominal",
            ResonancePolicy::Enforced => "enforced",
        }
    }
}

impl fmt::Display for ResonancePolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for ResonancePolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "nominal" => Ok(ResonancePolicy::Nominal),
            "enforced" => Ok(ResonancePolicy::Enforced),
            other => Err(Error::InvalidSpec(format!(
                "unknown resonance policy `{other}` (expected nominal or enforced)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TpeResult {
    pub probability: f64,
    pub kind: StateKind,
    pub policy: ResonancePolicy,
    pub source: SpdcSource,
    pub acceptor: EigenAcceptor,
}

/// `exp[-2 T_p² (ω_s⁰ + ω_i⁰ − ω_f)²]`.
pub fn resonance_prefactor(acc: &EigenAcceptor, src: &SpdcSource) -> f64 {
    resonance_prefactor_with(acc, src, ResonancePolicy::Nominal)
}

pub fn resonance_prefactor_with(acc: &EigenAcceptor, src: &SpdcSource, policy: ResonancePolicy) -> f64 {
    let detuning = src.omega_s0 + src.omega_i0 - policy.omega_f(acc, src);
    let x = src.t_pump * detuning;
    (-2.0 * x * x).exp()
}

/// `ω_i⁰ ω_s⁰ / (ħ² ε₀² c² A²)`, shared by all four closed forms.
fn field_factor(src: &SpdcSource) -> f64 {
    let k = CODATA;
    let denom = k.hbar * k.eps0 * k.c_light * src.area;
    src.omega_i0 * src.omega_s0 / (denom * denom)
}

/// Closed-form TPE probability with the nominal resonance policy.
pub fn p_tpe(kind: StateKind, acc: &EigenAcceptor, src: &SpdcSource) -> Result<TpeResult> {
    p_tpe_with_policy(kind, acc, src, ResonancePolicy::Nominal)
}

pub fn p_tpe_with_policy(
    kind: StateKind,
    acc: &EigenAcceptor,
    src: &SpdcSource,
    policy: ResonancePolicy,
) -> Result<TpeResult> {
    let probability = probability(kind, acc, src, policy).map_err(|e| {
        e.with_context(format!(
            "{kind} at T_e = {:.4} fs, J-mixing θ = {:.6}",
            src.t_ent * 1e15,
            acc.theta
        ))
    })?;
    Ok(TpeResult {
        probability,
        kind,
        policy,
        source: *src,
        acceptor: *acc,
    })
}

fn probability(kind: StateKind, acc: &EigenAcceptor, src: &SpdcSource, policy: ResonancePolicy) -> Result<f64> {
    let (tp, te) = (src.t_pump, src.t_ent);
    let alpha = SpdcSource::ALPHA;
    let common = field_factor(src) * resonance_prefactor_with(acc, src, policy);

    let mut bracket = Complex64::new(0.0, 0.0);
    for (omega_j, dipoles) in acc.pathways() {
        let to_idler = omega_j - src.omega_i0;
        let to_signal = omega_j - src.omega_s0;
        let term = match kind {
            // sin(2T_e x)/x · e^{-2iT_e x}
            StateKind::Sd => Complex64::from_polar(2.0 * te * sinc(2.0 * te * to_idler), -2.0 * te * to_idler),
            // (1 − e^{-2iT_e x})/x = 2iT_e e^{-iT_e x} sinc(T_e x)
            StateKind::Si => one_minus_phase_over(to_idler, te) + one_minus_phase_over(to_signal, te),
            StateKind::Gd => {
                f_pm(to_idler * alpha * 2.0 * te, Branch::Minus)?
                    + f_pm(to_signal * alpha * 2.0 * te, Branch::Plus)?
            }
            StateKind::Gi => {
                plasma_dispersion(to_idler * alpha * 2.0 * te) + plasma_dispersion(to_signal * alpha * 2.0 * te)
            }
        };
        bracket += dipoles * term;
    }

    let scale = match kind {
        StateKind::Sd => (tp / te) * (2.0 * PI).sqrt() / 2.0,
        StateKind::Si => (tp / te) * (2.0 * PI).sqrt() / 8.0,
        StateKind::Gd | StateKind::Gi => alpha * tp * te * PI / 4.0,
    };
    let p = scale * common * bracket.norm_sqr();
    if p.is_finite() {
        Ok(p)
    } else {
        Err(Error::Domain {
            function: "p_tpe",
            arg: format!("{kind}"),
            reason: "closed form produced a non-finite value",
        })
    }
}

fn one_minus_phase_over(x: f64, te: f64) -> Complex64 {
    Complex64::from_polar(2.0 * te * sinc(te * x), -te * x) * Complex64::i()
}
