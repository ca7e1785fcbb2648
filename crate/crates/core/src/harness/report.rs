//! Ratio reports for the Fig. 2 panels and structural summaries of the
//! coupled-acceptor heatmap.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::harness::spec::SweepSpec;
use crate::harness::sweep::{evaluate_cell, SweepRow, SweepTable};
use crate::source::{SpdcSource, StateKind};
use crate::tpe::ResonancePolicy;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Ratios {
    /// `max SI / max(max GD, max GI)`
    pub si_over_gauss_max: f64,
    pub gi_over_gd_max: f64,
    pub sd_over_si_max: f64,
    /// Per kind: maximum over the grid divided by the value at `T_e = T_p/α`.
    pub anticorr_over_quasiuncorr: BTreeMap<String, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub te_start_fs: f64,
    pub te_stop_fs: f64,
    pub te_step_fs: f64,
    pub j_over_w0: f64,
    pub quasi_uncorrelated_te_fs: f64,
    pub lambda_a_nm: f64,
    pub lambda_b_nm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioReport {
    pub panel: String,
    pub policy: ResonancePolicy,
    pub maxima: BTreeMap<String, f64>,
    pub ratios: Ratios,
    pub argmax_te_fs: BTreeMap<String, f64>,
    pub grid: GridInfo,
}

impl RatioReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }
}

/// Largest finite value among `rows` and the `T_e` where it occurs; the
/// first occurrence wins ties.
fn peak<'a>(rows: impl Iterator<Item = &'a SweepRow>) -> Option<(f64, f64)> {
    rows.filter_map(|r| r.value().filter(|p| p.is_finite()).map(|p| (p, r.te_fs)))
        .fold(None, |best, (p, te)| match best {
            Some((bp, _)) if bp >= p => best,
            _ => Some((p, te)),
        })
}

fn ratio(num: f64, den: f64, what: &str) -> Result<f64> {
    let r = num / den;
    if r.is_finite() && r > 0.0 {
        Ok(r)
    } else {
        Err(Error::InvalidSpec(format!("ratio {what} is not positive and finite ({num:e}/{den:e})")))
    }
}

/// Maxima and ratio families over the `J = 0` rows of `table`.
///
/// The quasi-uncorrelated reference is evaluated directly at `T_e = T_p/α`
/// with the source and acceptor parameters of `spec`, whether or not that
/// point lies on the table's grid.
pub fn ratios(table: &SweepTable, spec: &SweepSpec, panel: &str) -> Result<RatioReport> {
    let mut maxima = BTreeMap::new();
    let mut argmax = BTreeMap::new();
    let mut anti = BTreeMap::new();
    let te_uncorrelated = spec.t_pump_fs / SpdcSource::ALPHA;
    let mut peak_of = BTreeMap::new();

    for kind in StateKind::ALL {
        let rows = table.rows_for(kind).filter(|r| r.j_over_w0 == 0.0);
        let (p, te) = peak(rows).ok_or(Error::MissingKind(kind.token()))?;
        let reference = evaluate_cell(spec, kind, 0.0, te_uncorrelated)?;
        anti.insert(kind.token().to_string(), ratio(p, reference, &format!("{kind} anticorr/quasi-uncorr"))?);
        maxima.insert(kind.token().to_string(), p);
        argmax.insert(kind.token().to_string(), te);
        peak_of.insert(kind, p);
    }

    let [sd, si, gd, gi] = StateKind::ALL.map(|k| peak_of[&k]);
    let ratios = Ratios {
        si_over_gauss_max: ratio(si, gd.max(gi), "si/gauss")?,
        gi_over_gd_max: ratio(gi, gd, "gi/gd")?,
        sd_over_si_max: ratio(sd, si, "sd/si")?,
        anticorr_over_quasiuncorr: anti,
    };

    Ok(RatioReport {
        panel: panel.to_string(),
        policy: spec.resonance_policy,
        maxima,
        ratios,
        argmax_te_fs: argmax,
        grid: GridInfo {
            te_start_fs: spec.te_start_fs,
            te_stop_fs: spec.te_stop_fs,
            te_step_fs: spec.te_step_fs,
            j_over_w0: 0.0,
            quasi_uncorrelated_te_fs: te_uncorrelated,
            lambda_a_nm: spec.lambda_a_nm,
            lambda_b_nm: spec.lambda_b_nm,
        },
    })
}

/// Counts strict interior local maxima and minima of a sampled curve.
pub fn interior_extrema(values: &[f64]) -> (usize, usize) {
    let mut maxima = 0;
    let mut minima = 0;
    for w in values.windows(3) {
        if w[1] > w[0] && w[1] > w[2] {
            maxima += 1;
        } else if w[1] < w[0] && w[1] < w[2] {
            minima += 1;
        }
    }
    (maxima, minima)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindTrend {
    /// `(J/ω₀, argmax T_e in fs)` for each coupling, ascending in J.
    pub argmax_te_fs: Vec<(f64, f64)>,
    /// Couplings at which the argmax moved up by more than one grid step.
    pub increases_at: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeatmapSummary {
    pub global_max_kind: StateKind,
    pub global_max: f64,
    pub global_max_te_fs: f64,
    pub global_max_j_over_w0: f64,
    pub non_finite_cells: usize,
    pub trends: BTreeMap<String, KindTrend>,
    pub j_over_w0_max: f64,
    pub j_steps: usize,
}

/// Global maximum, failed-cell count and argmax-vs-coupling trend for each
/// kind of a `(T_e, J)` table.
pub fn heatmap_summary(table: &SweepTable, spec: &SweepSpec) -> Result<HeatmapSummary> {
    let mut best: Option<&SweepRow> = None;
    let mut non_finite = 0;
    for row in &table.rows {
        match row.value() {
            Some(p) if p.is_finite() => {
                if best.is_none_or(|b| p > b.value().unwrap_or(f64::NEG_INFINITY)) {
                    best = Some(row);
                }
            }
            _ => non_finite += 1,
        }
    }
    let best = best.ok_or(Error::MissingKind("any"))?;

    let js = spec.sorted_j();
    let slack = spec.te_step_fs * (1.0 + 1e-9);
    let mut trends = BTreeMap::new();
    for kind in table.kinds() {
        let mut points = Vec::with_capacity(js.len());
        for &j in &js {
            if let Some((_, te)) = peak(table.rows_for(kind).filter(|r| r.j_over_w0 == j)) {
                points.push((j, te));
            }
        }
        let increases_at = points
            .windows(2)
            .filter(|w| w[1].1 > w[0].1 + slack)
            .map(|w| w[1].0)
            .collect();
        trends.insert(kind.token().to_string(), KindTrend { argmax_te_fs: points, increases_at });
    }

    Ok(HeatmapSummary {
        global_max_kind: best.kind,
        global_max: best.value().unwrap_or(f64::NAN),
        global_max_te_fs: best.te_fs,
        global_max_j_over_w0: best.j_over_w0,
        non_finite_cells: non_finite,
        trends,
        j_over_w0_max: js.last().copied().unwrap_or(0.0),
        j_steps: js.len(),
    })
}
