//! Python bindings for the core crate.
//!
//! Thin wrappers only: same names, same units (radians, zero-based component
//! indices), same validation. Encodings are selected by their label strings
//! "frequency", "amplitude" and "arcsine". Core errors surface as ValueError.

use ampcred_core as core;
use num_complex::Complex64;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn kind_of(label: &str) -> PyResult<core::EncodingKind> {
    core::EncodingKind::ALL
        .into_iter()
        .find(|k| k.label() == label)
        .ok_or_else(|| {
            PyValueError::new_err(format!(
                "unknown encoding {label:?}; expected \"frequency\", \"amplitude\" or \"arcsine\""
            ))
        })
}

fn bits_of(bits: u32) -> PyResult<core::BitBudget> {
    core::BitBudget::new(bits).map_err(err)
}

fn dist_of(probs: Vec<f64>) -> PyResult<core::OutcomeDistribution> {
    core::OutcomeDistribution::new(probs).map_err(err)
}

fn phases_of(phases: Option<Vec<f64>>, k: usize) -> PyResult<core::PhaseVector> {
    match phases {
        None => Ok(core::PhaseVector::zeros(k)),
        Some(v) => core::PhaseVector::new(v).map_err(err),
    }
}

fn check_prob(p: f64) -> PyResult<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(PyValueError::new_err(format!("p={p} outside [0, 1]")));
    }
    Ok(())
}

fn check_trials(n: u64) -> PyResult<()> {
    if n == 0 {
        return Err(PyValueError::new_err("trial count must be positive"));
    }
    Ok(())
}

/// A K-dimensional unitary. Supports `u @ v` for matrix products.
#[pyclass(name = "Unitary", frozen)]
struct PyUnitary {
    inner: core::UnitaryK,
}

#[pymethods]
impl PyUnitary {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn entry(&self, row: usize, col: usize) -> PyResult<Complex64> {
        let d = self.inner.dim();
        if row >= d || col >= d {
            return Err(PyIndexError::new_err(format!(
                "entry ({row}, {col}) out of range for a {d}x{d} matrix"
            )));
        }
        Ok(self.inner.entry(row, col))
    }

    /// Entries as a list of rows.
    fn rows(&self) -> Vec<Vec<Complex64>> {
        let d = self.inner.dim();
        (0..d)
            .map(|r| (0..d).map(|c| self.inner.entry(r, c)).collect())
            .collect()
    }

    fn unitarity_residual(&self) -> f64 {
        self.inner.unitarity_residual()
    }

    fn apply(&self, v: &PyRepVector) -> PyResult<PyRepVector> {
        let inner = core::apply(&self.inner, &v.inner).map_err(err)?;
        Ok(PyRepVector { inner })
    }

    fn __matmul__(&self, rhs: &PyUnitary) -> PyResult<PyUnitary> {
        let inner = self.inner.mul(&rhs.inner).map_err(err)?;
        Ok(PyUnitary { inner })
    }

    fn __repr__(&self) -> String {
        format!("Unitary(dim={})", self.inner.dim())
    }
}

/// A representation vector over K outcomes.
#[pyclass(name = "RepVector", frozen)]
struct PyRepVector {
    inner: core::RepVector,
}

#[pymethods]
impl PyRepVector {
    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().label()
    }

    #[getter]
    fn components(&self) -> Vec<Complex64> {
        self.inner.components().to_vec()
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn __len__(&self) -> usize {
        self.inner.k()
    }

    fn __repr__(&self) -> String {
        format!(
            "RepVector(kind={:?}, k={})",
            self.inner.kind().label(),
            self.inner.k()
        )
    }
}

/// Per-component and total dispersion of an amplitude vector.
#[pyclass(name = "DispersionReport", frozen)]
struct PyDispersion {
    inner: core::DispersionReport,
}

#[pymethods]
impl PyDispersion {
    #[getter]
    fn trials(&self) -> u64 {
        self.inner.trials
    }

    #[getter]
    fn per_component(&self) -> Vec<f64> {
        self.inner.per_component.clone()
    }

    #[getter]
    fn total(&self) -> f64 {
        self.inner.total
    }

    #[getter]
    fn n_scaled_total(&self) -> f64 {
        self.inner.n_scaled_total
    }

    fn __repr__(&self) -> String {
        format!(
            "DispersionReport(trials={}, total={:.6e})",
            self.inner.trials, self.inner.total
        )
    }
}

/// Mean and standard error of a Monte Carlo estimate.
#[pyclass(name = "McEstimate", frozen)]
struct PyEstimate {
    inner: core::McEstimate,
}

#[pymethods]
impl PyEstimate {
    #[getter]
    fn mean(&self) -> f64 {
        self.inner.mean
    }

    #[getter]
    fn std_error(&self) -> f64 {
        self.inner.std_error
    }

    #[getter]
    fn replications(&self) -> u32 {
        self.inner.replications
    }

    /// Whether `exact` lies within `k_sigma` standard errors of the mean.
    #[pyo3(signature = (exact, k_sigma = 3.0))]
    fn contains(&self, exact: f64, k_sigma: f64) -> bool {
        self.inner.contains(exact, k_sigma)
    }

    fn __repr__(&self) -> String {
        format!(
            "McEstimate(mean={:.6e}, std_error={:.3e}, replications={})",
            self.inner.mean, self.inner.std_error, self.inner.replications
        )
    }
}

#[pyfunction]
fn encodings() -> Vec<&'static str> {
    core::EncodingKind::ALL.map(|k| k.label()).to_vec()
}

#[pyfunction]
fn encode_value(kind: &str, nu: f64) -> PyResult<f64> {
    core::encode_value(kind_of(kind)?, nu).map_err(err)
}

#[pyfunction]
fn sigma_nu(p: f64, n: u64) -> PyResult<f64> {
    check_prob(p)?;
    check_trials(n)?;
    Ok(core::sigma_nu(p, n))
}

#[pyfunction]
fn info_content(k: usize, bits: u32) -> PyResult<u64> {
    Ok(core::info_content(k, bits_of(bits)?))
}

#[pyfunction]
fn prob_bits_correct(kind: &str, n: u64, p: f64, bits: u32) -> PyResult<f64> {
    core::prob_bits_correct(kind_of(kind)?, n, p, bits_of(bits)?).map_err(err)
}

/// Credibility curve values over `grid` (interior points only).
#[pyfunction]
fn prob_curve(kind: &str, n: u64, bits: u32, grid: Vec<f64>) -> PyResult<Vec<f64>> {
    let curve = core::prob_curve(kind_of(kind)?, n, bits_of(bits)?, &grid).map_err(err)?;
    Ok(curve.values().to_vec())
}

#[pyfunction]
fn default_grid(points: usize) -> Vec<f64> {
    core::default_grid(points)
}

#[pyfunction]
fn endpoint_prob(kind: &str, n: u64, p: f64, bits: u32) -> PyResult<f64> {
    core::endpoint_prob(kind_of(kind)?, n, p, bits_of(bits)?).map_err(err)
}

#[pyfunction]
fn endpoint_locus_length(kind: &str) -> PyResult<f64> {
    Ok(core::endpoint_locus_length(kind_of(kind)?))
}

#[pyfunction]
#[pyo3(signature = (kind, counts, phases = None))]
fn build_vector(kind: &str, counts: Vec<u64>, phases: Option<Vec<f64>>) -> PyResult<PyRepVector> {
    let counts = core::TrialCounts::new(counts).map_err(err)?;
    let phases = phases_of(phases, counts.k())?;
    let inner = core::build_vector(kind_of(kind)?, &counts, &phases).map_err(err)?;
    Ok(PyRepVector { inner })
}

#[pyfunction]
fn from_amplitudes(components: Vec<Complex64>) -> PyResult<PyRepVector> {
    let inner = core::RepVector::from_amplitudes(components).map_err(err)?;
    Ok(PyRepVector { inner })
}

#[pyfunction]
#[pyo3(signature = (n, p, phi = 0.0))]
fn expectation_eta(n: u64, p: f64, phi: f64) -> PyResult<Complex64> {
    check_trials(n)?;
    check_prob(p)?;
    Ok(core::expectation_eta(n, p, phi))
}

#[pyfunction]
fn dispersion_component(n: u64, p: f64) -> PyResult<f64> {
    check_trials(n)?;
    check_prob(p)?;
    Ok(core::dispersion_component(n, p))
}

#[pyfunction]
#[pyo3(signature = (n, probs, phases = None))]
fn dispersion_total(n: u64, probs: Vec<f64>, phases: Option<Vec<f64>>) -> PyResult<PyDispersion> {
    let dist = dist_of(probs)?;
    let phases = phases_of(phases, dist.k())?;
    let inner = core::dispersion_total(n, &dist, &phases).map_err(err)?;
    Ok(PyDispersion { inner })
}

#[pyfunction]
fn asymptotic_dispersion(k: usize, n: u64) -> PyResult<f64> {
    if k < 2 {
        return Err(PyValueError::new_err("outcome count must be at least 2"));
    }
    check_trials(n)?;
    Ok(core::asymptotic_dispersion(k, n))
}

#[pyfunction]
fn identity(dim: usize) -> PyResult<PyUnitary> {
    if dim == 0 {
        return Err(PyValueError::new_err("dimension must be positive"));
    }
    Ok(PyUnitary {
        inner: core::UnitaryK::identity(dim),
    })
}

fn factor_of(
    dim: usize,
    (row, col, tau, theta, phi): (usize, usize, f64, f64, f64),
) -> PyResult<core::EmbeddedRotation> {
    let params = core::Rotation2Params::new(tau, theta, phi).map_err(err)?;
    core::EmbeddedRotation::new(dim, row, col, params).map_err(err)
}

/// The 2x2 rotation with angles in radians.
#[pyfunction]
fn rotation2(tau: f64, theta: f64, phi: f64) -> PyResult<PyUnitary> {
    compose(2, vec![(0, 1, tau, theta, phi)])
}

/// One rotation acting on component pair (row, col) of a dim-D identity.
#[pyfunction]
fn embed(
    dim: usize,
    row: usize,
    col: usize,
    tau: f64,
    theta: f64,
    phi: f64,
) -> PyResult<PyUnitary> {
    compose(dim, vec![(row, col, tau, theta, phi)])
}

/// Product of embedded rotations; the first listed factor is applied first.
/// Each factor is a tuple (row, col, tau, theta, phi).
#[pyfunction]
fn compose(dim: usize, factors: Vec<(usize, usize, f64, f64, f64)>) -> PyResult<PyUnitary> {
    let factors = factors
        .into_iter()
        .map(|f| factor_of(dim, f))
        .collect::<PyResult<Vec<_>>>()?;
    let inner = core::compose(dim, &factors).map_err(err)?;
    Ok(PyUnitary { inner })
}

#[pyfunction]
#[pyo3(signature = (n, probs, u, phases = None))]
fn dispersion_transformed(
    n: u64,
    probs: Vec<f64>,
    u: &PyUnitary,
    phases: Option<Vec<f64>>,
) -> PyResult<PyDispersion> {
    let dist = dist_of(probs)?;
    let phases = phases_of(phases, dist.k())?;
    let inner = core::dispersion_transformed(n, &dist, &phases, &u.inner).map_err(err)?;
    Ok(PyDispersion { inner })
}

/// (total_before, total_after, abs_difference) of the total dispersion under `u`.
#[pyfunction]
#[pyo3(signature = (n, probs, u, phases = None))]
fn conservation_check(
    n: u64,
    probs: Vec<f64>,
    u: &PyUnitary,
    phases: Option<Vec<f64>>,
) -> PyResult<(f64, f64, f64)> {
    let dist = dist_of(probs)?;
    let phases = phases_of(phases, dist.k())?;
    let check = core::conservation_check(n, &dist, &phases, &u.inner).map_err(err)?;
    Ok((check.total_before, check.total_after, check.abs_difference))
}

#[pyfunction]
fn binomial_pmf(n: u64, p: f64, l: u64) -> PyResult<f64> {
    check_trials(n)?;
    let table = core::LogFactorialTable::new(n as usize);
    core::binomial_pmf(&table, n, p, l).map_err(err)
}

#[pyfunction]
fn trinomial_pmf(n: u64, p_a: f64, p_b: f64, l_a: u64, l_b: u64) -> PyResult<f64> {
    check_trials(n)?;
    let table = core::LogFactorialTable::new(n as usize);
    core::trinomial_pmf(&table, n, p_a, p_b, l_a, l_b).map_err(err)
}

/// All (counts, weight) pairs of the N-trial multinomial, in odometer order.
#[pyfunction]
fn multinomial_enumerate(n: u64, probs: Vec<f64>) -> PyResult<Vec<(Vec<u64>, f64)>> {
    check_trials(n)?;
    let dist = dist_of(probs)?;
    let table = core::LogFactorialTable::new(n as usize);
    let iter = core::multinomial_enumerate(&table, n, &dist).map_err(err)?;
    Ok(iter
        .map(|(counts, w)| (counts.counts().to_vec(), w))
        .collect())
}

#[pyfunction]
#[pyo3(signature = (n, probs, *, seed, replication = 0))]
fn sample_counts(n: u64, probs: Vec<f64>, seed: u64, replication: u32) -> PyResult<Vec<u64>> {
    let dist = dist_of(probs)?;
    let cfg = core::SamplerConfig::new(seed, 1).map_err(err)?;
    let counts = core::sample_counts(n, &dist, &cfg, replication).map_err(err)?;
    Ok(counts.counts().to_vec())
}

#[pyfunction]
#[pyo3(signature = (kind, n, p, bits, *, seed, replications))]
fn mc_prob_bits(
    kind: &str,
    n: u64,
    p: f64,
    bits: u32,
    seed: u64,
    replications: u32,
) -> PyResult<PyEstimate> {
    let cfg = core::SamplerConfig::new(seed, replications).map_err(err)?;
    let inner = core::mc_prob_bits(kind_of(kind)?, n, p, bits_of(bits)?, &cfg).map_err(err)?;
    Ok(PyEstimate { inner })
}

#[pyfunction]
#[pyo3(signature = (n, probs, phases = None, u = None, *, seed, replications))]
fn mc_dispersion(
    n: u64,
    probs: Vec<f64>,
    phases: Option<Vec<f64>>,
    u: Option<&PyUnitary>,
    seed: u64,
    replications: u32,
) -> PyResult<PyEstimate> {
    let dist = dist_of(probs)?;
    let phases = phases_of(phases, dist.k())?;
    let cfg = core::SamplerConfig::new(seed, replications).map_err(err)?;
    let inner = core::mc_dispersion(n, &dist, &phases, u.map(|u| &u.inner), &cfg).map_err(err)?;
    Ok(PyEstimate { inner })
}

/// One calibration cell as (label, exact, mean, std_error, pass).
type CalibrationCell = (String, f64, f64, f64, bool);

/// Runs the 20-cell sampler calibration grid. Returns (passed, cells).
#[pyfunction]
#[pyo3(signature = (*, seed = 42, replications = 10_000))]
fn run_calibration(seed: u64, replications: u32) -> PyResult<(usize, Vec<CalibrationCell>)> {
    let cfg = core::SamplerConfig::new(seed, replications).map_err(err)?;
    let report = core::run_calibration(&cfg).map_err(err)?;
    let cells = report
        .cells
        .into_iter()
        .map(|c| {
            (
                c.label,
                c.exact,
                c.estimate.mean,
                c.estimate.std_error,
                c.pass,
            )
        })
        .collect();
    Ok((report.passed, cells))
}

#[pymodule]
fn ampcred(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyUnitary>()?;
    m.add_class::<PyRepVector>()?;
    m.add_class::<PyDispersion>()?;
    m.add_class::<PyEstimate>()?;
    m.add_function(wrap_pyfunction!(encodings, m)?)?;
    m.add_function(wrap_pyfunction!(encode_value, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_nu, m)?)?;
    m.add_function(wrap_pyfunction!(info_content, m)?)?;
    m.add_function(wrap_pyfunction!(prob_bits_correct, m)?)?;
    m.add_function(wrap_pyfunction!(prob_curve, m)?)?;
    m.add_function(wrap_pyfunction!(default_grid, m)?)?;
    m.add_function(wrap_pyfunction!(endpoint_prob, m)?)?;
    m.add_function(wrap_pyfunction!(endpoint_locus_length, m)?)?;
    m.add_function(wrap_pyfunction!(build_vector, m)?)?;
    m.add_function(wrap_pyfunction!(from_amplitudes, m)?)?;
    m.add_function(wrap_pyfunction!(expectation_eta, m)?)?;
    m.add_function(wrap_pyfunction!(dispersion_component, m)?)?;
    m.add_function(wrap_pyfunction!(dispersion_total, m)?)?;
    m.add_function(wrap_pyfunction!(asymptotic_dispersion, m)?)?;
    m.add_function(wrap_pyfunction!(identity, m)?)?;
    m.add_function(wrap_pyfunction!(rotation2, m)?)?;
    m.add_function(wrap_pyfunction!(embed, m)?)?;
    m.add_function(wrap_pyfunction!(compose, m)?)?;
    m.add_function(wrap_pyfunction!(dispersion_transformed, m)?)?;
    m.add_function(wrap_pyfunction!(conservation_check, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(trinomial_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(multinomial_enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(sample_counts, m)?)?;
    m.add_function(wrap_pyfunction!(mc_prob_bits, m)?)?;
    m.add_function(wrap_pyfunction!(mc_dispersion, m)?)?;
    m.add_function(wrap_pyfunction!(run_calibration, m)?)?;
    m.add("RNG_ALGORITHM", core::RNG_ALGORITHM)?;
    m.add("DEFAULT_TAIL_CUTOFF", core::DEFAULT_TAIL_CUTOFF)?;
    m.add("ENUMERATION_LIMIT", core::ENUMERATION_LIMIT)?;
    Ok(())
}
