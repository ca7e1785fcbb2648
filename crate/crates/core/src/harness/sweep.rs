//! Grid evaluation of the closed forms and the CSV table format.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::Write;

use crate::error::{Error, Result};
use crate::harness::spec::SweepSpec;
use crate::source::StateKind;
use crate::tpe::p_tpe_with_policy;

/// Caps the worker pool of [`sweep`].
pub const THREADS_ENV: &str = "BIPHOTON_RET_THREADS";

pub const CSV_HEADER: [&str; 4] = ["te_fs", "j_over_w0", "state", "p_tpe"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub te_fs: f64,
    pub j_over_w0: f64,
    pub kind: StateKind,
    /// Probability, or the message of the error that the cell raised.
    pub p: std::result::Result<f64, String>,
}

impl SweepRow {
    pub fn value(&self) -> Option<f64> {
        self.p.as_ref().ok().copied()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    /// Ordered by kind, then coupling, then entanglement time.
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn kinds(&self) -> Vec<StateKind> {
        let mut kinds: Vec<StateKind> = self.rows.iter().map(|r| r.kind).collect();
        kinds.dedup();
        kinds
    }

    pub fn rows_for(&self, kind: StateKind) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }

    pub fn errors(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows.iter().filter(|r| r.p.is_err())
    }

    /// CSV with 17 significant digits and `\n` line endings. Failed cells
    /// are written as `NaN`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        w.write_record(CSV_HEADER).map_err(csv_error)?;
        for row in &self.rows {
            let p = match &row.p {
                Ok(p) => format!("{p:.16e}"),
                Err(_) => "NaN".to_string(),
            };
            w.write_record([
                format!("{:.16e}", row.te_fs),
                format!("{:.16e}", row.j_over_w0),
                row.kind.token().to_string(),
                p,
            ])
            .map_err(csv_error)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::Io(e.to_string()))
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// One cell. `T_e = 0` takes the limit value, which is zero for every kind.
pub fn evaluate_cell(spec: &SweepSpec, kind: StateKind, j_over_w0: f64, te_fs: f64) -> Result<f64> {
    if te_fs == 0.0 {
        return Ok(0.0);
    }
    let acc = spec.acceptor(j_over_w0)?;
    let src = spec.source(te_fs)?;
    Ok(p_tpe_with_policy(kind, &acc, &src, spec.resonance_policy)?.probability)
}

fn cells(spec: &SweepSpec) -> Vec<(StateKind, f64, f64)> {
    let te = spec.te_grid_fs();
    let js = spec.sorted_j();
    let mut out = Vec::with_capacity(te.len() * js.len() * spec.kinds.len());
    for kind in spec.sorted_kinds() {
        for &j in &js {
            out.extend(te.iter().map(|&t| (kind, j, t)));
        }
    }
    out
}

fn row(spec: &SweepSpec, (kind, j_over_w0, te_fs): (StateKind, f64, f64)) -> SweepRow {
    SweepRow {
        te_fs,
        j_over_w0,
        kind,
        p: evaluate_cell(spec, kind, j_over_w0, te_fs).map_err(|e| e.to_string()),
    }
}

/// Worker count from [`THREADS_ENV`], if set.
pub fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Error::InvalidSpec(format!("{THREADS_ENV} must be a positive integer, got `{v}`"))),
        },
    }
}

/// Full cross-product sweep on a worker pool capped by [`THREADS_ENV`].
/// Cell failures become error rows; only an invalid spec aborts.
pub fn sweep(spec: &SweepSpec) -> Result<SweepTable> {
    sweep_with_threads(spec, threads_from_env()?)
}

/// `threads = None` uses rayon's default pool size.
pub fn sweep_with_threads(spec: &SweepSpec, threads: Option<usize>) -> Result<SweepTable> {
    spec.validate()?;
    let cells = cells(spec);
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n);
    }
    let pool = builder.build().map_err(|e| Error::Io(e.to_string()))?;
    let rows = pool.install(|| cells.into_par_iter().map(|c| row(spec, c)).collect());
    Ok(SweepTable { rows })
}

pub fn sweep_serial(spec: &SweepSpec) -> Result<SweepTable> {
    spec.validate()?;
    Ok(SweepTable {
        rows: cells(spec).into_iter().map(|c| row(spec, c)).collect(),
    })
}
