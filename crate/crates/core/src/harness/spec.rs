//! Sweep grids and the figure presets.

use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::acceptor::{diagonalize, AcceptorPair, EigenAcceptor};
use crate::error::{Error, Result};
use crate::source::{SpdcSource, StateKind};
use crate::tpe::ResonancePolicy;
use crate::units::{fs, SQUARE_MICRON};

/// Flat, unit-suffixed description of a `(kind, J, T_e)` grid. This is also
/// the JSON config-file schema.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub te_start_fs: f64,
    pub te_stop_fs: f64,
    pub te_step_fs: f64,
    /// Coupling in units of the mean source frequency `ω₀`.
    pub j_over_w0: Vec<f64>,
    pub kinds: Vec<StateKind>,
    pub lambda_a_nm: f64,
    pub lambda_b_nm: f64,
    pub lambda_s_nm: f64,
    pub lambda_i_nm: f64,
    pub t_pump_fs: f64,
    pub mu_debye: f64,
    pub area_um2: f64,
    #[serde(default)]
    pub resonance_policy: ResonancePolicy,
}

/// Fig. 2 acceptor wavelengths (nm) by panel letter.
pub const FIG2_PANELS: [(char, f64, f64); 4] = [
    ('a', 800.0, 820.0),
    ('b', 770.0, 854.0),
    ('c', 740.0, 894.0),
    ('d', 710.0, 942.0),
];

pub const FIG3_J_MAX: f64 = 0.05;
pub const FIG3_J_STEPS: usize = 101;

impl SweepSpec {
    /// T_e ∈ [0, 800] fs at 0.8 fs, degenerate 810 nm source, T_p = 350 fs,
    /// μ = 1 D, A = 1 μm², J = 0, all four kinds.
    pub fn fig2(panel: char) -> Result<Self> {
        let panel = panel.to_ascii_lowercase();
        let &(_, lambda_a_nm, lambda_b_nm) = FIG2_PANELS
            .iter()
            .find(|(p, _, _)| *p == panel)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown panel `{panel}` (expected a, b, c or d)")))?;
        Ok(Self {
            te_start_fs: 0.0,
            te_stop_fs: 800.0,
            te_step_fs: 0.8,
            j_over_w0: vec![0.0],
            kinds: StateKind::ALL.to_vec(),
            lambda_a_nm,
            lambda_b_nm,
            lambda_s_nm: SpdcSource::DEFAULT_LAMBDA_NM,
            lambda_i_nm: SpdcSource::DEFAULT_LAMBDA_NM,
            t_pump_fs: 350.0,
            mu_debye: 1.0,
            area_um2: 1.0,
            resonance_policy: ResonancePolicy::Nominal,
        })
    }

    /// Panel (b) acceptor on a `J/ω₀ ∈ [0, 0.05]` axis of 101 points.
    pub fn fig3() -> Self {
        let mut spec = Self::fig2('b').expect("panel b exists");
        spec.j_over_w0 = (0..FIG3_J_STEPS)
            .map(|k| FIG3_J_MAX * k as f64 / (FIG3_J_STEPS - 1) as f64)
            .collect();
        spec
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        let spec: Self = serde_json::from_str(&text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidSpec(msg));
        if !(self.te_step_fs.is_finite() && self.te_step_fs > 0.0) {
            return bad(format!("te_step_fs must be positive, got {}", self.te_step_fs));
        }
        if !(self.te_start_fs.is_finite() && self.te_start_fs >= 0.0) {
            return bad(format!("te_start_fs must be non-negative, got {}", self.te_start_fs));
        }
        if !(self.te_stop_fs.is_finite() && self.te_stop_fs >= self.te_start_fs) {
            return bad(format!("te_stop_fs must be at least te_start_fs, got {}", self.te_stop_fs));
        }
        if self.j_over_w0.is_empty() || self.kinds.is_empty() {
            return bad("j_over_w0 and kinds must be non-empty".into());
        }
        if let Some(j) = self.j_over_w0.iter().find(|j| !j.is_finite()) {
            return bad(format!("non-finite coupling {j}"));
        }
        for (name, v) in [
            ("lambda_a_nm", self.lambda_a_nm),
            ("lambda_b_nm", self.lambda_b_nm),
            ("lambda_s_nm", self.lambda_s_nm),
            ("lambda_i_nm", self.lambda_i_nm),
            ("t_pump_fs", self.t_pump_fs),
            ("area_um2", self.area_um2),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return bad(format!("{name} must be positive, got {v}"));
            }
        }
        if !self.mu_debye.is_finite() {
            return bad(format!("mu_debye must be finite, got {}", self.mu_debye));
        }
        Ok(())
    }

    /// `te_start + k·te_step` up to `te_stop`, with a relative slack of
    /// 1e-9 steps so that decimal steps land on the stop value.
    pub fn te_grid_fs(&self) -> Vec<f64> {
        let span = (self.te_stop_fs - self.te_start_fs) / self.te_step_fs;
        let n = (span + 1e-9).floor() as usize + 1;
        (0..n).map(|k| self.te_start_fs + k as f64 * self.te_step_fs).collect()
    }

    /// Kinds in canonical order, duplicates removed.
    pub fn sorted_kinds(&self) -> Vec<StateKind> {
        let mut kinds = self.kinds.clone();
        kinds.sort();
        kinds.dedup();
        kinds
    }

    /// Couplings ascending, duplicates removed.
    pub fn sorted_j(&self) -> Vec<f64> {
        let mut js = self.j_over_w0.clone();
        js.sort_by(f64::total_cmp);
        js.dedup();
        js
    }

    /// Source at a given entanglement time (must be positive).
    pub fn source(&self, te_fs: f64) -> Result<SpdcSource> {
        SpdcSource::from_wavelengths(
            self.lambda_s_nm,
            self.lambda_i_nm,
            fs(self.t_pump_fs),
            fs(te_fs),
            self.area_um2 * SQUARE_MICRON,
        )
    }

    /// `ω₀`, the mean central frequency of the source.
    pub fn omega_0(&self) -> f64 {
        0.5 * (crate::units::angular_frequency_from_nm(self.lambda_s_nm)
            + crate::units::angular_frequency_from_nm(self.lambda_i_nm))
    }

    pub fn acceptor(&self, j_over_w0: f64) -> Result<EigenAcceptor> {
        let pair = AcceptorPair::from_wavelengths(
            self.lambda_a_nm,
            self.lambda_b_nm,
            j_over_w0 * self.omega_0(),
            self.mu_debye,
            self.mu_debye,
        )?;
        Ok(diagonalize(&pair))
    }
}
