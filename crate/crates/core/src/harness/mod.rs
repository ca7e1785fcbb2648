//! Parameter sweeps, figure presets, ratio reports and the oracle check.

pub mod report;
pub mod spec;
pub mod sweep;
pub mod verify;

pub use report::{heatmap_summary, interior_extrema, ratios, HeatmapSummary, KindTrend, RatioReport, Ratios};
pub use spec::{SweepSpec, FIG2_PANELS};
pub use sweep::{evaluate_cell, sweep, sweep_serial, sweep_with_threads, SweepRow, SweepTable, THREADS_ENV};
pub use verify::{format_verify, max_deviation, verify, VerifyRow, VERIFY_TOLERANCE};
