//! `biphoton-ret` command line: single points, sweeps, figure presets and
//! the oracle check.
//!
//! Exit status: 0 on success, 1 for usage errors, 2 when a numerical
//! evaluation failed.

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use biphoton_ret::harness::{
    self, format_verify, heatmap_summary, max_deviation, ratios, HeatmapSummary, RatioReport, SweepSpec, SweepTable,
};
use biphoton_ret::{Error, ResonancePolicy, StateKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "biphoton-ret", version, about = "Two-photon excitation of a coupled acceptor pair by SPDC photons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// One closed-form probability, printed as JSON.
    Point(PointArgs),
    /// Cross-product sweep from a JSON config and/or flags, written as CSV.
    Sweep(SweepArgs),
    /// Fig. 2 panel preset: CSV plus a ratio report.
    Fig2(Fig2Args),
    /// Coupled-acceptor heatmap preset: CSV plus a report.
    Fig3(Fig3Args),
    /// Closed forms against the time-domain oracle.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct PhysicsArgs {
    #[arg(long)]
    lambda_a_nm: Option<f64>,
    #[arg(long)]
    lambda_b_nm: Option<f64>,
    #[arg(long)]
    lambda_s_nm: Option<f64>,
    #[arg(long)]
    lambda_i_nm: Option<f64>,
    #[arg(long)]
    t_pump_fs: Option<f64>,
    #[arg(long)]
    mu_debye: Option<f64>,
    #[arg(long)]
    area_um2: Option<f64>,
    /// Set ω_f to ω_s⁰ + ω_i⁰ instead of ω_a + ω_b.
    #[arg(long)]
    enforce_resonance: bool,
}

impl PhysicsArgs {
    fn apply(&self, spec: &mut SweepSpec) {
        let set = |slot: &mut f64, v: Option<f64>| {
            if let Some(v) = v {
                *slot = v;
            }
        };
        set(&mut spec.lambda_a_nm, self.lambda_a_nm);
        set(&mut spec.lambda_b_nm, self.lambda_b_nm);
        set(&mut spec.lambda_s_nm, self.lambda_s_nm);
        set(&mut spec.lambda_i_nm, self.lambda_i_nm);
        set(&mut spec.t_pump_fs, self.t_pump_fs);
        set(&mut spec.mu_debye, self.mu_debye);
        set(&mut spec.area_um2, self.area_um2);
        if self.enforce_resonance {
            spec.resonance_policy = ResonancePolicy::Enforced;
        }
    }
}

#[derive(Debug, Args)]
struct PointArgs {
    #[arg(long)]
    state: StateKind,
    #[arg(long)]
    te_fs: f64,
    /// Coupling J/ω₀.
    #[arg(long, default_value_t = 0.0)]
    j: f64,
    #[command(flatten)]
    physics: PhysicsArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Flat JSON file with the sweep fields; flags override it. Without a
    /// file the Fig. 2(b) preset is the base.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    te_start_fs: Option<f64>,
    #[arg(long)]
    te_stop_fs: Option<f64>,
    #[arg(long)]
    te_step_fs: Option<f64>,
    /// Couplings J/ω₀, comma separated.
    #[arg(long, value_delimiter = ',')]
    j: Option<Vec<f64>>,
    /// States, comma separated (sd, si, gd, gi).
    #[arg(long, value_delimiter = ',')]
    states: Option<Vec<StateKind>>,
    #[command(flatten)]
    physics: PhysicsArgs,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Fig2Args {
    #[arg(long, value_parser = ["a", "b", "c", "d"])]
    panel: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report destination; defaults to the CSV path with a `.json` extension.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long)]
    enforce_resonance: bool,
}

#[derive(Debug, Args)]
struct Fig3Args {
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value_t = harness::spec::FIG3_J_MAX)]
    j_max: f64,
    #[arg(long, default_value_t = harness::spec::FIG3_J_STEPS)]
    j_steps: usize,
    #[arg(long)]
    enforce_resonance: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 12)]
    points: usize,
    #[arg(long)]
    enforce_resonance: bool,
    /// Also write the table here.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure classified by exit status.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidSpec(_) | Error::InvalidParameter { .. } | Error::Io(_) => Failure::Usage(e.to_string()),
            _ => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn policy(enforce: bool) -> ResonancePolicy {
    if enforce {
        ResonancePolicy::Enforced
    } else {
        ResonancePolicy::Nominal
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut w = create(path)?;
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_table(table: &SweepTable, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => table.write_csv(create(path)?)?,
        None => table.write_csv(io::stdout().lock())?,
    }
    Ok(())
}

/// Failed cells turn into exit status 2 after the table is written.
fn check_cells(table: &SweepTable) -> Result<(), Failure> {
    let failed: Vec<_> = table.errors().collect();
    if let Some(first) = failed.first() {
        return Err(Failure::Numeric(format!(
            "{} cell(s) failed; first at {} T_e = {} fs, J/ω₀ = {}: {}",
            failed.len(),
            first.kind,
            first.te_fs,
            first.j_over_w0,
            first.p.as_ref().unwrap_err()
        )));
    }
    Ok(())
}

fn report_path(out: &Option<PathBuf>, report: &Option<PathBuf>, default_stem: &str) -> PathBuf {
    match (report, out) {
        (Some(r), _) => r.clone(),
        (None, Some(o)) => o.with_extension("json"),
        (None, None) => PathBuf::from(format!("{default_stem}.json")),
    }
}

#[derive(Serialize)]
struct PointOutput {
    state: StateKind,
    te_fs: f64,
    j_over_w0: f64,
    p_tpe: f64,
    policy: ResonancePolicy,
    parameters: SweepSpec,
}

fn point(args: PointArgs) -> Result<(), Failure> {
    let mut spec = SweepSpec::fig2('b')?;
    args.physics.apply(&mut spec);
    spec.te_start_fs = args.te_fs;
    spec.te_stop_fs = args.te_fs;
    spec.te_step_fs = 1.0;
    spec.j_over_w0 = vec![args.j];
    spec.kinds = vec![args.state];
    spec.validate()?;
    let p = harness::evaluate_cell(&spec, args.state, args.j, args.te_fs)?;
    let out = PointOutput {
        state: args.state,
        te_fs: args.te_fs,
        j_over_w0: args.j,
        p_tpe: p,
        policy: spec.resonance_policy,
        parameters: spec,
    };
    let text = serde_json::to_string_pretty(&out).map_err(|e| Failure::Usage(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), Failure> {
    let mut spec = match &args.config {
        Some(path) => SweepSpec::from_json_file(path)?,
        None => SweepSpec::fig2('b')?,
    };
    let set = |slot: &mut f64, v: Option<f64>| {
        if let Some(v) = v {
            *slot = v;
        }
    };
    set(&mut spec.te_start_fs, args.te_start_fs);
    set(&mut spec.te_stop_fs, args.te_stop_fs);
    set(&mut spec.te_step_fs, args.te_step_fs);
    if let Some(j) = args.j {
        spec.j_over_w0 = j;
    }
    if let Some(states) = args.states {
        spec.kinds = states;
    }
    args.physics.apply(&mut spec);
    let table = harness::sweep(&spec)?;
    write_table(&table, args.out.as_deref())?;
    check_cells(&table)
}

fn fig2(args: Fig2Args) -> Result<(), Failure> {
    let panel = args.panel.chars().next().unwrap_or('b');
    let mut spec = SweepSpec::fig2(panel)?;
    spec.resonance_policy = policy(args.enforce_resonance);
    let table = harness::sweep(&spec)?;
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from(format!("fig2{panel}.csv")));
    write_table(&table, Some(&out))?;
    check_cells(&table)?;
    let report = ratios(&table, &spec, &args.panel)?;
    write_json(&report_path(&Some(out), &args.report, ""), &report)?;
    print_ratio_summary(&report);
    Ok(())
}

fn print_ratio_summary(r: &RatioReport) {
    eprintln!(
        "panel {} ({}): si/gauss = {:.4}, gi/gd = {:.4}, sd/si = {:.4}, si anticorr/quasi-uncorr = {:.1}",
        r.panel,
        r.policy,
        r.ratios.si_over_gauss_max,
        r.ratios.gi_over_gd_max,
        r.ratios.sd_over_si_max,
        r.ratios.anticorr_over_quasiuncorr.get("si").copied().unwrap_or(f64::NAN)
    );
}

#[derive(Serialize)]
struct Fig3Report {
    #[serde(flatten)]
    ratios: RatioReport,
    heatmap: HeatmapSummary,
}

fn fig3(args: Fig3Args) -> Result<(), Failure> {
    if args.j_steps < 2 || !(args.j_max.is_finite() && args.j_max > 0.0) {
        return Err(Failure::Usage("fig3 needs --j-steps ≥ 2 and a positive --j-max".into()));
    }
    let mut spec = SweepSpec::fig3();
    spec.j_over_w0 = (0..args.j_steps)
        .map(|k| args.j_max * k as f64 / (args.j_steps - 1) as f64)
        .collect();
    spec.resonance_policy = policy(args.enforce_resonance);
    let table = harness::sweep(&spec)?;
    let out = args.out.clone().unwrap_or_else(|| PathBuf::from("fig3.csv"));
    write_table(&table, Some(&out))?;
    check_cells(&table)?;
    let report = Fig3Report {
        ratios: ratios(&table, &spec, "fig3")?,
        heatmap: heatmap_summary(&table, &spec)?,
    };
    write_json(&report_path(&Some(out), &args.report, "fig3"), &report)?;
    eprintln!(
        "global maximum: {} at T_e = {} fs, J/ω₀ = {} ({} non-finite cells)",
        report.heatmap.global_max_kind,
        report.heatmap.global_max_te_fs,
        report.heatmap.global_max_j_over_w0,
        report.heatmap.non_finite_cells
    );
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<(), Failure> {
    let rows = harness::verify(args.points, policy(args.enforce_resonance), harness::sweep::threads_from_env()?)?;
    let text = format_verify(&rows);
    print!("{text}");
    let worst = max_deviation(&rows);
    println!("max relative deviation: {worst:.3e}");
    if let Some(path) = &args.out {
        let mut w = create(path)?;
        w.write_all(text.as_bytes())?;
        w.flush()?;
    }
    if rows.iter().all(|r| r.passes()) {
        Ok(())
    } else {
        Err(Failure::Numeric(format!(
            "{} of {} points exceed {:.0}% deviation",
            rows.iter().filter(|r| !r.passes()).count(),
            rows.len(),
            100.0 * harness::VERIFY_TOLERANCE
        )))
    }
}

/// Parses `argv` (program name first), runs the subcommand and returns the
/// process exit status.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let result = match cli.command {
        Command::Point(a) => point(a),
        Command::Sweep(a) => sweep(a),
        Command::Fig2(a) => fig2(a),
        Command::Fig3(a) => fig3(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("numerical failure: {msg}");
            EXIT_NUMERIC
        }
    }
}
