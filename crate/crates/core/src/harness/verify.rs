//! Closed forms against the time-domain oracle at Fig. 2(b) parameters.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::harness::spec::SweepSpec;
use crate::oracle::{p_tpe_numeric_with, OracleOptions, TimeGrid};
use crate::source::StateKind;
use crate::tpe::{p_tpe_with_policy, ResonancePolicy};

/// Agreement demanded of every point.
pub const VERIFY_TOLERANCE: f64 = 0.02;

/// Entanglement times visited in order; the first three form the standard
/// 12-point matrix.
pub const VERIFY_TE_FS: [f64; 12] = [50.0, 200.0, 600.0, 100.0, 400.0, 800.0, 25.0, 300.0, 700.0, 150.0, 500.0, 10.0];

pub const MAX_VERIFY_POINTS: usize = 4 * VERIFY_TE_FS.len();

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub kind: StateKind,
    pub te_fs: f64,
    pub closed: f64,
    pub numeric: f64,
    pub relative_deviation: f64,
    pub oracle_refinement_change: f64,
    pub error: Option<String>,
}

impl VerifyRow {
    pub fn passes(&self) -> bool {
        self.error.is_none() && self.relative_deviation <= VERIFY_TOLERANCE
    }
}

/// `(kind, T_e)` pairs: each entanglement time with all four kinds.
pub fn verify_points(points: usize) -> Result<Vec<(StateKind, f64)>> {
    if points == 0 || points > MAX_VERIFY_POINTS {
        return Err(Error::InvalidSpec(format!(
            "verify needs between 1 and {MAX_VERIFY_POINTS} points, got {points}"
        )));
    }
    Ok(VERIFY_TE_FS
        .iter()
        .flat_map(|&te| StateKind::ALL.map(|k| (k, te)))
        .take(points)
        .collect())
}

fn verify_one(spec: &SweepSpec, kind: StateKind, te_fs: f64, policy: ResonancePolicy) -> VerifyRow {
    let run = || -> Result<(f64, f64, f64)> {
        let acc = spec.acceptor(0.0)?;
        let src = spec.source(te_fs)?;
        let closed = p_tpe_with_policy(kind, &acc, &src, policy)?.probability;
        let opts = OracleOptions { policy, ..Default::default() };
        let numeric = p_tpe_numeric_with(kind, &acc, &src, &TimeGrid::for_source(&src), opts)?;
        Ok((closed, numeric.probability, numeric.relative_change))
    };
    match run() {
        Ok((closed, numeric, change)) => VerifyRow {
            kind,
            te_fs,
            closed,
            numeric,
            relative_deviation: (closed - numeric).abs() / numeric.abs(),
            oracle_refinement_change: change,
            error: None,
        },
        Err(e) => VerifyRow {
            kind,
            te_fs,
            closed: f64::NAN,
            numeric: f64::NAN,
            relative_deviation: f64::NAN,
            oracle_refinement_change: f64::NAN,
            error: Some(e.to_string()),
        },
    }
}

/// Oracle-vs-closed-form matrix on the panel (b) acceptor, J = 0.
pub fn verify(points: usize, policy: ResonancePolicy, threads: Option<usize>) -> Result<Vec<VerifyRow>> {
    let mut spec = SweepSpec::fig2('b')?;
    spec.resonance_policy = policy;
    let pts = verify_points(points)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
    Ok(pool.install(|| pts.into_par_iter().map(|(k, te)| verify_one(&spec, k, te, policy)).collect()))
}

/// Fixed-width text table, one line per point.
pub fn format_verify(rows: &[VerifyRow]) -> String {
    let mut out = String::from("state     te_fs              closed             oracle    rel_dev  status\n");
    for r in rows {
        let status = match (&r.error, r.passes()) {
            (Some(e), _) => format!("ERROR {e}"),
            (None, true) => "ok".into(),
            (None, false) => "FAIL".into(),
        };
        let _ = writeln!(
            out,
            "{:<5} {:>9.1} {:>19.10e} {:>19.10e} {:>10.3e}  {}",
            r.kind.token(),
            r.te_fs,
            r.closed,
            r.numeric,
            r.relative_deviation,
            status
        );
    }
    out
}

/// Largest relative deviation, `NaN` if any point failed outright.
pub fn max_deviation(rows: &[VerifyRow]) -> f64 {
    rows.iter().map(|r| r.relative_deviation).fold(0.0, |m: f64, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) })
}
