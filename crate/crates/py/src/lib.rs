//! Python bindings. Exact quantities cross the boundary as
//! `fractions.Fraction`; SI quantities as floats.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use swclock::kinematics::{simulate as simulate_clock, Body};
use swclock::oracle;
use swclock::recorder::{read_stream, ReadoutMode};
use swclock::units;
use swclock::{ClockError, McOptions, Rational};

fn py_err(e: ClockError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn fraction<'py>(py: Python<'py>, r: &Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((units::format(r),))
}

fn parse_opt(s: Option<&str>) -> PyResult<Option<Rational>> {
    s.map(|s| units::parse(s).map_err(py_err)).transpose()
}

/// A validated clock: `n` dial divisions, `m` hand-speed multiplier and a
/// running time in seconds. `phi` and `recorder_x` are rational strings
/// such as `"1/2"`.
#[pyclass(name = "ClockConfig", module = "swclock", frozen)]
struct PyClockConfig {
    inner: swclock::ClockConfig,
}

#[pymethods]
impl PyClockConfig {
    #[new]
    #[pyo3(signature = (n, m, running_time_s, mass_kg=None, phi=None, recorder_x=None))]
    fn new(
        n: u64,
        m: u64,
        running_time_s: f64,
        mass_kg: Option<f64>,
        phi: Option<&str>,
        recorder_x: Option<&str>,
    ) -> PyResult<Self> {
        let inner = swclock::build_config(
            n,
            m,
            running_time_s,
            mass_kg,
            parse_opt(phi)?,
            parse_opt(recorder_x)?,
        )
        .map_err(py_err)?;
        Ok(Self { inner })
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m()
    }

    #[getter]
    fn phi<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.phi())
    }

    #[getter]
    fn beta<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.beta())
    }

    #[getter]
    fn ell<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.ell())
    }

    #[getter]
    fn dial_length<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, &self.inner.dial_length())
    }

    #[getter]
    fn recorder_x<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, self.inner.recorder_x())
    }

    #[getter]
    fn mass_kg(&self) -> Option<f64> {
        self.inner.mass_kg()
    }

    #[getter]
    fn running_time_s(&self) -> f64 {
        self.inner.running_time_si()
    }

    #[getter]
    fn tau_s(&self) -> f64 {
        self.inner.tau_si()
    }

    #[getter]
    fn dial_length_m(&self) -> f64 {
        self.inner.dial_length_si()
    }

    #[getter]
    fn hand_speed_m_per_s(&self) -> f64 {
        self.inner.hand_speed_si()
    }

    #[getter]
    fn warnings(&self) -> Vec<String> {
        self.inner.warnings().iter().map(|w| format!("{w:?}")).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "ClockConfig(n={}, m={}, running_time_s={}, phi={}, beta={})",
            self.inner.n(),
            self.inner.m(),
            self.inner.running_time_si(),
            units::format_compact(self.inner.phi()),
            units::format_compact(self.inner.beta()),
        )
    }
}

/// Recorder arrival stream as a list of `(species, arrival_time, serial)`.
#[pyfunction]
fn arrivals<'py>(py: Python<'py>, cfg: &PyClockConfig) -> PyResult<Bound<'py, PyList>> {
    let (_, stream) = simulate_clock(&cfg.inner);
    let out = PyList::empty(py);
    for r in &stream {
        out.append((r.species.as_str(), fraction(py, &r.arrival_time)?, r.truth_serial))?;
    }
    Ok(out)
}

/// Time readings for the whole stream, one dict per `Q2`.
///
/// `mode` is `"simple"` (m = 1 only), `"serial"` or `"unresolved"`; the
/// default picks `"simple"` for m = 1 and `"serial"` otherwise.
#[pyfunction]
#[pyo3(signature = (cfg, mode=None))]
fn read_times<'py>(py: Python<'py>, cfg: &PyClockConfig, mode: Option<&str>) -> PyResult<Bound<'py, PyList>> {
    let cfg = &cfg.inner;
    let mode = match mode {
        None if cfg.m() == 1 => ReadoutMode::Simple,
        None | Some("serial") => ReadoutMode::Serial,
        Some("simple") => ReadoutMode::Simple,
        Some("unresolved") => ReadoutMode::Unresolved,
        Some(other) => return Err(PyValueError::new_err(format!("unknown readout mode {other:?}"))),
    };
    let (events, stream) = simulate_clock(cfg);
    let readings = read_stream(&stream, cfg, mode).map_err(py_err)?;
    let out = PyList::empty(py);
    for r in readings {
        let k = r.pairing.q2_arrival.truth_serial;
        let truth = events
            .iter()
            .find(|e| e.body == Body::Hand && e.serial == k)
            .map(|e| e.time.clone())
            .expect("every serial has a hand event");
        let d = PyDict::new(py);
        d.set_item("truth_serial", k)?;
        d.set_item("serial", r.pairing.resolved_serial)?;
        d.set_item("t_c", fraction(py, &r.t_c)?)?;
        d.set_item("t_0", fraction(py, &r.t_0)?)?;
        d.set_item("rho", fraction(py, &r.rho)?)?;
        d.set_item("truth_t_c", fraction(py, &truth)?)?;
        let candidates = PyList::empty(py);
        for c in &r.ambiguity_set {
            candidates.append(fraction(py, c)?)?;
        }
        d.set_item("candidates", candidates)?;
        d.set_item("resolved", r.is_resolved())?;
        d.set_item("edge_truncated", r.edge_truncated)?;
        d.set_item("in_range", r.in_range(cfg))?;
        out.append(d)?;
    }
    Ok(out)
}

/// `(k, closed_form_offset, oracle_offset)` for every triad.
#[pyfunction]
fn pairing_table(cfg: &PyClockConfig) -> Vec<(u64, u64, u64)> {
    oracle::pairing_table(&cfg.inner)
        .into_iter()
        .map(|r| (r.k, r.offset_closed_form, r.offset_oracle))
        .collect()
}

/// Minimum clock mass in kg for the configured clock.
#[pyfunction]
fn mass_bound(cfg: &PyClockConfig) -> f64 {
    swclock::mass_bound(&cfg.inner)
}

/// Minimum clock mass in kg from SI running time, accuracy and dial length.
#[pyfunction]
fn mass_bound_si(running_time_s: f64, tau_s: f64, dial_length_m: f64) -> PyResult<f64> {
    swclock::mass_bound_si(running_time_s, tau_s, dial_length_m).map_err(py_err)
}

#[pyfunction]
fn uncertainty_report<'py>(py: Python<'py>, cfg: &PyClockConfig) -> PyResult<Bound<'py, PyDict>> {
    let r = swclock::uncertainty_report(&cfg.inner).map_err(py_err)?;
    let d = PyDict::new(py);
    d.set_item("dx_h", r.dx_h)?;
    d.set_item("dp_h", r.dp_h)?;
    d.set_item("du", r.du)?;
    d.set_item("hand_speed", r.hand_speed)?;
    d.set_item("spread_factor", r.spread_factor)?;
    d.set_item("mass_bound", r.mass_bound)?;
    d.set_item("spreading_ratio", r.spreading_ratio)?;
    d.set_item("spreading_ok", r.spreading_ok)?;
    Ok(d)
}

/// Monte-Carlo hand indeterminacy. Returns the summary dict with the
/// per-reading errors (units of `τ`) under `"errors_tau"`.
#[pyfunction]
#[pyo3(signature = (cfg, samples, seed=0, sigma_scale=1.0, spread_inflation=false, perturb_dial=false, serial_resolution=false))]
#[allow(clippy::too_many_arguments)]
fn run_mc<'py>(
    py: Python<'py>,
    cfg: &PyClockConfig,
    samples: u64,
    seed: u64,
    sigma_scale: f64,
    spread_inflation: bool,
    perturb_dial: bool,
    serial_resolution: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let opts = McOptions {
        sigma_scale,
        spread_inflation,
        perturb_dial,
        serial_resolution,
    };
    let inner = &cfg.inner;
    let run = py
        .detach(|| swclock::run_mc(inner, samples, seed, &opts))
        .map_err(py_err)?;
    let s = &run.summary;
    let d = PyDict::new(py);
    d.set_item("n", s.n)?;
    d.set_item("m", s.m)?;
    d.set_item("samples", s.samples)?;
    d.set_item("seed", s.seed)?;
    d.set_item("err_mean", s.err_mean)?;
    d.set_item("err_std", s.err_std)?;
    d.set_item("err_std_over_tau", s.err_std_over_tau)?;
    d.set_item("pairing_flips", s.pairing_flips)?;
    d.set_item("err_max_abs", s.err_max_abs)?;
    d.set_item("errors_tau", run.errors_tau)?;
    Ok(d)
}

#[pymodule]
#[pyo3(name = "swclock")]
fn swclock_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyClockConfig>()?;
    m.add_function(wrap_pyfunction!(arrivals, m)?)?;
    m.add_function(wrap_pyfunction!(read_times, m)?)?;
    m.add_function(wrap_pyfunction!(pairing_table, m)?)?;
    m.add_function(wrap_pyfunction!(mass_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mass_bound_si, m)?)?;
    m.add_function(wrap_pyfunction!(uncertainty_report, m)?)?;
    m.add_function(wrap_pyfunction!(run_mc, m)?)?;
    m.add("HBAR", swclock::HBAR)?;
    Ok(())
}
