//! Python module `biphoton_ret`.

use num_complex::Complex64;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

use biphoton_ret::harness::{self, SweepSpec};
use biphoton_ret::oracle::{self, OracleOptions, TimeGrid};
use biphoton_ret::specfun::{self, Branch};
use biphoton_ret::units::{fs, SQUARE_MICRON};
use biphoton_ret::{tpe, Error, ResonancePolicy, StateKind};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidParameter { .. } | Error::InvalidSpec(_) | Error::Domain { .. } | Error::MissingKind(_) => {
            PyValueError::new_err(e.to_string())
        }
        _ => PyArithmeticError::new_err(e.to_string()),
    }
}

fn state(s: &str) -> PyResult<StateKind> {
    s.parse().map_err(to_py)
}

fn policy(enforce: bool) -> ResonancePolicy {
    if enforce {
        ResonancePolicy::Enforced
    } else {
        ResonancePolicy::Nominal
    }
}

#[pyfunction]
fn faddeeva(z: Complex64) -> Complex64 {
    specfun::faddeeva(z)
}

#[pyfunction]
fn erfi(z: Complex64) -> PyResult<Complex64> {
    specfun::erfi(z).map_err(to_py)
}

#[pyfunction]
fn plasma_dispersion(xi: f64) -> Complex64 {
    specfun::plasma_dispersion(xi)
}

/// `branch` is "minus" or "plus".
#[pyfunction]
fn f_pm(xi: f64, branch: &str) -> PyResult<Complex64> {
    let b = match branch {
        "minus" | "-" => Branch::Minus,
        "plus" | "+" => Branch::Plus,
        other => return Err(PyValueError::new_err(format!("unknown branch `{other}`"))),
    };
    specfun::f_pm(xi, b).map_err(to_py)
}

/// Acceptor in the eigenbasis; produced by `AcceptorPair.diagonalize`.
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct EigenAcceptor(biphoton_ret::EigenAcceptor);

#[pymethods]
impl EigenAcceptor {
    #[getter]
    fn omega_alpha(&self) -> f64 {
        self.0.omega_alpha
    }
    #[getter]
    fn omega_beta(&self) -> f64 {
        self.0.omega_beta
    }
    #[getter]
    fn omega_f(&self) -> f64 {
        self.0.omega_f
    }
    #[getter]
    fn theta(&self) -> f64 {
        self.0.theta
    }
    /// `(μ_αg, μ_βg, μ_fα, μ_fβ)` in C·m.
    #[getter]
    fn dipoles(&self) -> (f64, f64, f64, f64) {
        let a = &self.0;
        (a.mu_alpha_g, a.mu_beta_g, a.mu_f_alpha, a.mu_f_beta)
    }
    fn __repr__(&self) -> String {
        format!(
            "EigenAcceptor(omega_alpha={:e}, omega_beta={:e}, theta={})",
            self.0.omega_alpha, self.0.omega_beta, self.0.theta
        )
    }
}

/// Coupled pair from excitation wavelengths (nm), coupling J (rad/s) and
/// dipoles (debye).
#[pyclass(frozen)]
struct AcceptorPair(biphoton_ret::AcceptorPair);

#[pymethods]
impl AcceptorPair {
    #[new]
    #[pyo3(signature = (lambda_a_nm, lambda_b_nm, coupling_j=0.0, mu_ag_debye=1.0, mu_bg_debye=1.0))]
    fn new(lambda_a_nm: f64, lambda_b_nm: f64, coupling_j: f64, mu_ag_debye: f64, mu_bg_debye: f64) -> PyResult<Self> {
        biphoton_ret::AcceptorPair::from_wavelengths(lambda_a_nm, lambda_b_nm, coupling_j, mu_ag_debye, mu_bg_debye)
            .map(Self)
            .map_err(to_py)
    }
    #[getter]
    fn omega_a(&self) -> f64 {
        self.0.omega_a
    }
    #[getter]
    fn omega_b(&self) -> f64 {
        self.0.omega_b
    }
    fn diagonalize(&self) -> EigenAcceptor {
        EigenAcceptor(biphoton_ret::diagonalize(&self.0))
    }
}

/// SPDC source; times in fs, area in μm².
#[pyclass(frozen, from_py_object)]
#[derive(Clone)]
struct SpdcSource(biphoton_ret::SpdcSource);

#[pymethods]
impl SpdcSource {
    #[new]
    #[pyo3(signature = (t_pump_fs, t_ent_fs, lambda_s_nm=810.0, lambda_i_nm=810.0, area_um2=1.0))]
    fn new(t_pump_fs: f64, t_ent_fs: f64, lambda_s_nm: f64, lambda_i_nm: f64, area_um2: f64) -> PyResult<Self> {
        biphoton_ret::SpdcSource::from_wavelengths(lambda_s_nm, lambda_i_nm, fs(t_pump_fs), fs(t_ent_fs), area_um2 * SQUARE_MICRON)
            .map(Self)
            .map_err(to_py)
    }
    #[getter]
    fn omega_s0(&self) -> f64 {
        self.0.omega_s0
    }
    #[getter]
    fn omega_i0(&self) -> f64 {
        self.0.omega_i0
    }
    /// `∫∫|Φ|²` for one state.
    fn norm(&self, state: &str) -> PyResult<f64> {
        biphoton_ret::norm(self::state(state)?, &self.0).map_err(to_py)
    }
    /// Joint spectral amplitude at detunings in rad/s.
    fn jsa(&self, state: &str, omega_s: f64, omega_i: f64) -> PyResult<Complex64> {
        Ok(biphoton_ret::jsa(self::state(state)?, &self.0, omega_s, omega_i))
    }
}

/// Closed-form TPE probability.
#[pyfunction]
#[pyo3(signature = (state, acceptor, source, enforce_resonance=false))]
fn p_tpe(state: &str, acceptor: EigenAcceptor, source: SpdcSource, enforce_resonance: bool) -> PyResult<f64> {
    tpe::p_tpe_with_policy(self::state(state)?, &acceptor.0, &source.0, policy(enforce_resonance))
        .map(|r| r.probability)
        .map_err(to_py)
}

/// Time-domain oracle on the default grid for the source.
#[pyfunction]
#[pyo3(signature = (state, acceptor, source, enforce_resonance=false))]
fn p_tpe_numeric(state: &str, acceptor: EigenAcceptor, source: SpdcSource, enforce_resonance: bool) -> PyResult<f64> {
    let opts = OracleOptions {
        policy: policy(enforce_resonance),
        ..Default::default()
    };
    let grid = TimeGrid::for_source(&source.0);
    oracle::p_tpe_numeric_with(self::state(state)?, &acceptor.0, &source.0, &grid, opts)
        .map(|r| r.probability)
        .map_err(to_py)
}

/// Runs a sweep given as a JSON string with the config-file fields.
/// Returns `(te_fs, j_over_w0, state, p)` tuples; failed cells give NaN.
#[pyfunction]
fn sweep(py: Python<'_>, spec_json: &str) -> PyResult<Vec<(f64, f64, String, f64)>> {
    let spec: SweepSpec = serde_json::from_str(spec_json).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let table = py.detach(|| harness::sweep(&spec)).map_err(to_py)?;
    Ok(table
        .rows
        .into_iter()
        .map(|r| (r.te_fs, r.j_over_w0, r.kind.token().to_string(), r.p.unwrap_or(f64::NAN)))
        .collect())
}

/// Ratio report for a Fig. 2 panel, as a JSON string.
#[pyfunction]
#[pyo3(signature = (panel, enforce_resonance=false))]
fn fig2_report(py: Python<'_>, panel: &str, enforce_resonance: bool) -> PyResult<String> {
    let letter = panel.chars().next().unwrap_or(' ');
    let mut spec = SweepSpec::fig2(letter).map_err(to_py)?;
    spec.resonance_policy = policy(enforce_resonance);
    py.detach(|| {
        let table = harness::sweep(&spec)?;
        harness::ratios(&table, &spec, panel)?.to_json()
    })
    .map_err(to_py)
}

#[pymodule]
#[pyo3(name = "biphoton_ret")]
fn biphoton_ret_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(faddeeva, m)?)?;
    m.add_function(wrap_pyfunction!(erfi, m)?)?;
    m.add_function(wrap_pyfunction!(plasma_dispersion, m)?)?;
    m.add_function(wrap_pyfunction!(f_pm, m)?)?;
    m.add_function(wrap_pyfunction!(p_tpe, m)?)?;
    m.add_function(wrap_pyfunction!(p_tpe_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    m.add_function(wrap_pyfunction!(fig2_report, m)?)?;
    m.add_class::<AcceptorPair>()?;
    m.add_class::<EigenAcceptor>()?;
    m.add_class::<SpdcSource>()?;
    Ok(())
}
