//! Brute-force second-order perturbation theory in the time domain.
//!
//! The transition amplitude is a double integral over the two interaction
//! times. In `t₊ = (t₁+t₂)/2` and `τ = t₂ − t₁` the dipole kernel and every
//! mode function factorize, so the integral becomes one transform along the
//! sum axis and one along the difference axis. Both temporal wavefunctions
//! are obtained numerically from the mode function by FFT; nothing here
//! uses the closed forms.

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::acceptor::EigenAcceptor;
use crate::error::{positive_finite, Error, Result};
use crate::source::{jsa, SpdcSource, StateKind};
use crate::tpe::ResonancePolicy;
use crate::units::CODATA;

/// Coverage demanded of a grid, in units of the pump duration (sum axis)
/// and entanglement time (difference axis).
pub const MIN_SPAN_WIDTHS: f64 = 8.0;
pub const MIN_POINTS: usize = 1024;

/// Relative change between a grid and its refinement above which
/// [`p_tpe_numeric`] gives up.
pub const CONVERGENCE_LIMIT: f64 = 1e-2;

/// Allowed discretization error of [`temporal_amplitude`], relative to the
/// absolute-value bound of its sums.
pub const AMPLITUDE_TOLERANCE: f64 = 5e-3;

/// Discretization of the `(t₊, τ)` plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    /// Extent along `t₊`, centred on zero, s.
    pub span_sum: f64,
    /// Extent along `τ ≥ 0`, s.
    pub span_diff: f64,
    pub n_sum: usize,
    pub n_diff: usize,
}

impl TimeGrid {
    /// Default grid for a source: 32 `T_p` by 16 `T_e`.
    pub fn for_source(src: &SpdcSource) -> Self {
        Self {
            span_sum: 32.0 * src.t_pump,
            span_diff: 16.0 * src.t_ent,
            n_sum: 1024,
            n_diff: 1 << 16,
        }
    }

    /// Same spans, twice the points on both axes.
    pub fn refined(&self) -> Self {
        Self {
            n_sum: 2 * self.n_sum,
            n_diff: 2 * self.n_diff,
            ..*self
        }
    }

    pub fn validate(&self, src: &SpdcSource) -> Result<()> {
        positive_finite("span_sum", self.span_sum)?;
        positive_finite("span_diff", self.span_diff)?;
        for (name, n) in [("n_sum", self.n_sum), ("n_diff", self.n_diff)] {
            if n < MIN_POINTS || !n.is_power_of_two() {
                return Err(Error::InvalidParameter {
                    name,
                    value: n as f64,
                    reason: "must be a power of two no smaller than 1024",
                });
            }
        }
        if self.span_sum < MIN_SPAN_WIDTHS * src.t_pump {
            return Err(Error::InvalidParameter {
                name: "span_sum",
                value: self.span_sum,
                reason: "must cover at least 8 pump durations",
            });
        }
        if self.span_diff < MIN_SPAN_WIDTHS * src.t_ent {
            return Err(Error::InvalidParameter {
                name: "span_diff",
                value: self.span_diff,
                reason: "must cover at least 8 entanglement times",
            });
        }
        Ok(())
    }
}

/// Which excitation orderings enter the double integral.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TimeOrdering {
    /// `t₁ < t₂`, as required by time-dependent perturbation theory.
    #[default]
    Causal,
    /// Both orderings; not physical, kept to expose the ordering's effect.
    Unrestricted,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleOptions {
    pub policy: ResonancePolicy,
    pub ordering: TimeOrdering,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericTpe {
    /// Value on the refined grid.
    pub probability: f64,
    /// Value on the grid as given.
    pub coarse: f64,
    pub relative_change: f64,
    pub grid: TimeGrid,
}

/// `ħ √(ω_s⁰ ω_i⁰) / (4π ε₀ c A)`, the product of the two single-mode
/// field strengths with `√ω` frozen at the central frequencies.
pub fn field_strength(src: &SpdcSource) -> f64 {
    let k = CODATA;
    k.hbar * (src.omega_s0 * src.omega_i0).sqrt() / (4.0 * PI * k.eps0 * k.c_light * src.area)
}

/// Mode function along one factor axis: `Φ(S, 0)` or `Φ(0, D)`.
#[derive(Debug, Clone, Copy)]
enum Axis {
    Sum,
    Diff,
}

fn on_axis(phi: &impl Fn(f64, f64) -> Complex64, axis: Axis, x: f64) -> Complex64 {
    match axis {
        Axis::Sum => phi(0.5 * x, 0.5 * x),
        Axis::Diff => phi(-0.5 * x, 0.5 * x),
    }
}

fn axis_jsa(kind: StateKind, src: &SpdcSource, axis: Axis, x: f64) -> Complex64 {
    on_axis(&|ws, wi| jsa(kind, src, ws, wi), axis, x)
}

/// Half-width of the frequency window that carries the mode function.
fn frequency_reach(kind: StateKind, src: &SpdcSource, axis: Axis) -> f64 {
    match axis {
        Axis::Sum => 8.0 / src.t_pump,
        Axis::Diff if kind.is_gaussian() => 8.0 / (SpdcSource::ALPHA * src.t_ent),
        Axis::Diff => 2048.0 * PI / src.t_ent,
    }
}

/// Time support of the transform, used to keep aliases away.
fn time_reach(src: &SpdcSource, axis: Axis) -> f64 {
    match axis {
        Axis::Sum => 16.0 * src.t_pump,
        Axis::Diff => 16.0 * src.t_ent,
    }
}

/// Trapezoid sum for `∫ f(x) e^{-ixt} dx` on `[-reach, reach]` with step
/// `h`, along with `Σ |f| h`.
fn direct_transform(f: impl Fn(f64) -> Complex64, t: f64, reach: f64, h: f64) -> (Complex64, f64) {
    let half = (reach / h).ceil() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut bound = 0.0;
    for m in -half..=half {
        let x = m as f64 * h;
        let w = if m.abs() == half { 0.5 * h } else { h };
        let v = f(x) * w;
        acc += v * Complex64::from_polar(1.0, -x * t);
        bound += v.norm();
    }
    (acc, bound)
}

fn checked_transform(
    phi: &impl Fn(f64, f64) -> Complex64,
    kind: StateKind,
    src: &SpdcSource,
    axis: Axis,
    t: f64,
) -> Result<Complex64> {
    let reach = frequency_reach(kind, src, axis);
    let h = PI / (t.abs() + time_reach(src, axis));
    let f = |x: f64| on_axis(phi, axis, x);
    let (coarse, _) = direct_transform(f, t, reach, h);
    let (fine, bound) = direct_transform(f, t, 2.0 * reach, 0.5 * h);
    let err = (fine - coarse).norm();
    if err > AMPLITUDE_TOLERANCE * bound {
        return Err(Error::GridResolution(format!(
            "{kind} transform at t = {t:.4e} s changes by {:.3e} of its bound under refinement",
            err / bound
        )));
    }
    Ok(fine)
}

/// Two-photon wavefunction `∫∫ φ(Ω_s, Ω_i) e^{-iΩ_s t_s − iΩ_i t_i} dΩ_s dΩ_i`
/// (carriers excluded) for a mode function that factorizes in sum and
/// difference frequency. `kind` picks the frequency window.
///
/// Each factor transform is evaluated by direct summation and checked
/// against a run with doubled frequency window and halved step.
pub fn wavefunction(
    kind: StateKind,
    src: &SpdcSource,
    phi: impl Fn(f64, f64) -> Complex64,
    t_s: f64,
    t_i: f64,
) -> Result<Complex64> {
    if !(t_s.is_finite() && t_i.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "time",
            value: if t_s.is_finite() { t_i } else { t_s },
            reason: "must be finite",
        });
    }
    let origin = phi(0.0, 0.0);
    if origin.norm() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "phi(0, 0)",
            value: 0.0,
            reason: "mode function must not vanish at the central frequencies",
        });
    }
    let p = checked_transform(&phi, kind, src, Axis::Sum, 0.5 * (t_s + t_i))?;
    let g = checked_transform(&phi, kind, src, Axis::Diff, 0.5 * (t_i - t_s))?;
    // dΩ_s dΩ_i = ½ dS dD
    Ok(0.5 * p * g / origin)
}

/// Two-photon field amplitude `⟨0|Ê_i⁺(t₂)Ê_s⁺(t₁) + Ê_s⁺(t₂)Ê_i⁺(t₁)|Ψ⟩`,
/// optical carriers included (V²/m²).
pub fn temporal_amplitude(kind: StateKind, src: &SpdcSource, t1: f64, t2: f64) -> Result<Complex64> {
    let phi = |ws, wi| jsa(kind, src, ws, wi);
    // signal at t₁, idler at t₂
    let first = Complex64::from_polar(1.0, -src.omega_s0 * t1 - src.omega_i0 * t2) * wavefunction(kind, src, phi, t1, t2)?;
    // signal at t₂, idler at t₁
    let second = Complex64::from_polar(1.0, -src.omega_s0 * t2 - src.omega_i0 * t1) * wavefunction(kind, src, phi, t2, t1)?;
    Ok(field_strength(src) * (first + second))
}

/// Samples `∫ f(x) e^{-ixt} dx` at `t_k = (k − n/2)·dt` from an FFT over
/// `x_m = (m − n/2)·dx`, `dx = 2π/(n dt)`.
fn fft_transform(f: impl Fn(f64) -> Complex64, n: usize, dt: f64, planner: &mut FftPlanner<f64>) -> Vec<Complex64> {
    let dx = 2.0 * PI / (n as f64 * dt);
    let half = (n / 2) as f64;
    let sign = |k: usize| if k % 2 == 0 { 1.0 } else { -1.0 };
    let mut buf: Vec<Complex64> = (0..n).map(|m| f((m as f64 - half) * dx) * sign(m)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    // (−1)^{n/2} is +1 for every admissible n
    for (k, v) in buf.iter_mut().enumerate() {
        *v *= sign(k) * dx;
    }
    buf
}

/// `∫₀^{L} e^{icτ} g(τ) dτ` by the trapezoid rule on equally spaced samples
/// starting at `τ = 0`.
fn trapezoid_phase(samples: impl Iterator<Item = Complex64>, c: f64, dtau: f64) -> Complex64 {
    let values: Vec<Complex64> = samples.collect();
    let last = values.len().saturating_sub(1);
    values
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let w = if k == 0 || k == last { 0.5 } else { 1.0 };
            v * Complex64::from_polar(w * dtau, c * k as f64 * dtau)
        })
        .sum()
}

fn amplitude_on_grid(
    kind: StateKind,
    acc: &EigenAcceptor,
    src: &SpdcSource,
    grid: &TimeGrid,
    opts: OracleOptions,
    planner: &mut FftPlanner<f64>,
) -> Complex64 {
    let omega_f = opts.policy.omega_f(acc, src);
    let detuning = omega_f - src.omega_s0 - src.omega_i0;
    let origin = jsa(kind, src, 0.0, 0.0).re;

    // sum axis: P(t₊), then ∫ e^{iΔt₊} P dt₊
    let dt = grid.span_sum / grid.n_sum as f64;
    let p = fft_transform(|s| axis_jsa(kind, src, Axis::Sum, s), grid.n_sum, dt, planner);
    let t_sum = trapezoid_phase(p.iter().copied(), detuning, dt) * Complex64::from_polar(1.0, -detuning * grid.span_sum / 2.0);

    // difference axis: G(u) on u ∈ [−L/2, L/2), τ = 2u
    let n = grid.n_diff;
    let du = grid.span_diff / n as f64;
    let g = fft_transform(|d| axis_jsa(kind, src, Axis::Diff, d), n, du, planner);
    let mid = n / 2;
    let dtau = 2.0 * du;

    let mut bracket = Complex64::new(0.0, 0.0);
    for (omega_j, dipoles) in acc.pathways() {
        if dipoles == 0.0 {
            continue;
        }
        let c1 = 0.5 * (omega_f - 2.0 * omega_j - src.omega_i0 + src.omega_s0);
        let c2 = 0.5 * (omega_f - 2.0 * omega_j - src.omega_s0 + src.omega_i0);
        // G(τ/2) for τ ≥ 0 and G(−τ/2) for τ ≥ 0
        let mut term = trapezoid_phase(g[mid..].iter().copied(), c1, dtau)
            + trapezoid_phase(g[..=mid].iter().rev().copied(), c2, dtau);
        if opts.ordering == TimeOrdering::Unrestricted {
            // τ < 0: the same two samples read with the sign of τ flipped
            term += trapezoid_phase(g[..=mid].iter().rev().copied(), -c1, dtau)
                + trapezoid_phase(g[mid..].iter().copied(), -c2, dtau);
        }
        bracket += dipoles * term;
    }

    let hbar = CODATA.hbar;
    t_sum * bracket * (field_strength(src) / (2.0 * hbar * hbar * origin))
}

/// TPE probability from the time-ordered double integral, causal ordering
/// and nominal resonance.
pub fn p_tpe_numeric(kind: StateKind, acc: &EigenAcceptor, src: &SpdcSource, grid: &TimeGrid) -> Result<f64> {
    p_tpe_numeric_with(kind, acc, src, grid, OracleOptions::default()).map(|r| r.probability)
}

/// Evaluates on `grid` and on its refinement; fails if the two differ by
/// more than [`CONVERGENCE_LIMIT`].
pub fn p_tpe_numeric_with(
    kind: StateKind,
    acc: &EigenAcceptor,
    src: &SpdcSource,
    grid: &TimeGrid,
    opts: OracleOptions,
) -> Result<NumericTpe> {
    grid.validate(src)?;
    let mut planner = FftPlanner::new();
    let coarse = amplitude_on_grid(kind, acc, src, grid, opts, &mut planner).norm_sqr();
    let fine_grid = grid.refined();
    let fine = amplitude_on_grid(kind, acc, src, &fine_grid, opts, &mut planner).norm_sqr();
    if !(coarse.is_finite() && fine.is_finite()) {
        return Err(Error::Quadrature(format!("{kind} oracle produced a non-finite value")));
    }
    let relative_change = if fine == 0.0 { 0.0 } else { (fine - coarse).abs() / fine };
    if relative_change > CONVERGENCE_LIMIT {
        return Err(Error::NonConvergence {
            relative_change,
            limit: CONVERGENCE_LIMIT,
        });
    }
    Ok(NumericTpe {
        probability: fine,
        coarse,
        relative_change,
        grid: fine_grid,
    })
}
