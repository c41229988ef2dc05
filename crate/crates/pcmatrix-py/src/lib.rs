//! Python bindings for the pcmatrix crate.
//!
//! Exposes the pairwise-comparison matrix type together with triad scoring,
//! worst-triad reduction, weight extraction, and the Monte Carlo experiment
//! driver. Unlike the file formats and the CLI, which label rows and columns
//! from 1, everything here is 0-based so indices can be used directly on
//! Python lists.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use pcmatrix::montecarlo::{self, ExperimentConfig, ExperimentReport, SampleRecord, Stats};
use pcmatrix::{
    reduction, spectral, MatrixClass, PcError, PcMatrix, ReductionConfig, TriadScore,
    WeightVector,
};

/// Eigenvalue non-convergence is a runtime condition, not bad input.
fn to_py_err(err: PcError) -> PyErr {
    match err {
        PcError::EigenDidNotConverge { .. } => PyRuntimeError::new_err(err.to_string()),
        _ => PyValueError::new_err(err.to_string()),
    }
}

fn check_same_n(a: &PcMatrix, b: &PcMatrix) -> PyResult<()> {
    if a.n() != b.n() {
        return Err(PyValueError::new_err(format!(
            "dimension mismatch: {}x{} vs {}x{}",
            a.n(),
            a.n(),
            b.n(),
            b.n()
        )));
    }
    Ok(())
}

fn score_dict<'py>(py: Python<'py>, score: &TriadScore) -> PyResult<Bound<'py, PyDict>> {
    let (i, j, k) = score.triad.indices();
    let dict = PyDict::new(py);
    dict.set_item("i", i)?;
    dict.set_item("j", j)?;
    dict.set_item("k", k)?;
    dict.set_item("ii", score.ii)?;
    dict.set_item("log_distance", score.log_distance)?;
    Ok(dict)
}

fn stats_dict<'py>(py: Python<'py>, stats: &Stats) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("mean", stats.mean)?;
    dict.set_item("median", stats.median)?;
    Ok(dict)
}

fn record_dict<'py>(py: Python<'py>, record: &SampleRecord) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("sample", record.sample)?;
    dict.set_item("initial_ii", record.initial_ii)?;
    dict.set_item("steps", record.steps)?;
    dict.set_item("converged", record.converged)?;
    dict.set_item("gm_log_distance", record.gm_log_distance)?;
    dict.set_item("gm_raw_distance", record.gm_raw_distance)?;
    dict.set_item("ev_log_distance", record.ev_log_distance)?;
    dict.set_item("ev_raw_distance", record.ev_raw_distance)?;
    Ok(dict)
}

fn report_dict<'py>(py: Python<'py>, report: &ExperimentReport) -> PyResult<Bound<'py, PyDict>> {
    let config = PyDict::new(py);
    config.set_item("n", report.config.n)?;
    config.set_item("samples", report.config.samples)?;
    config.set_item("beta", report.config.beta)?;
    config.set_item("seed", report.config.seed)?;
    config.set_item("threshold", report.config.threshold)?;
    config.set_item("max_steps", report.config.max_steps)?;

    let records = PyList::empty(py);
    for record in &report.records {
        records.append(record_dict(py, record)?)?;
    }

    let s = &report.summary;
    let summary = PyDict::new(py);
    summary.set_item("samples", s.samples)?;
    summary.set_item("converged_fraction", s.converged_fraction)?;
    summary.set_item("eigen_ok_count", s.eigen_ok_count)?;
    summary.set_item("initial_ii", stats_dict(py, &s.initial_ii)?)?;
    summary.set_item("steps", stats_dict(py, &s.steps)?)?;
    summary.set_item("gm_log_distance", stats_dict(py, &s.gm_log_distance)?)?;
    summary.set_item("gm_raw_distance", stats_dict(py, &s.gm_raw_distance)?)?;
    let ev_log = s.ev_log_distance.as_ref().map(|v| stats_dict(py, v)).transpose()?;
    summary.set_item("ev_log_distance", ev_log)?;
    let ev_raw = s.ev_raw_distance.as_ref().map(|v| stats_dict(py, v)).transpose()?;
    summary.set_item("ev_raw_distance", ev_raw)?;
    summary.set_item("gm_log_within_fraction", s.gm_log_within_fraction)?;
    summary.set_item("gm_raw_within_fraction", s.gm_raw_within_fraction)?;
    summary.set_item("step_histogram", s.step_histogram.clone())?;

    let dict = PyDict::new(py);
    dict.set_item("config", config)?;
    dict.set_item("rng_algorithm", &report.rng_algorithm)?;
    dict.set_item("records", records)?;
    dict.set_item("summary", summary)?;
    Ok(dict)
}

/// Positive pairwise-comparison matrix.
#[pyclass(name = "PcMatrix", module = "pcmatrix_py")]
struct PyPcMatrix {
    inner: PcMatrix,
}

#[pymethods]
impl PyPcMatrix {
    /// Builds a matrix from a square list of rows. Entries must be positive
    /// and finite; reciprocity is classified, not required.
    #[new]
    fn new(rows: Vec<Vec<f64>>) -> PyResult<Self> {
        PcMatrix::from_rows(&rows)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    /// The consistent matrix m[i][j] = w[i] / w[j]. Invariant under
    /// rescaling of the weights.
    #[staticmethod]
    fn from_weights(weights: Vec<f64>) -> PyResult<Self> {
        let weights = WeightVector::raw(weights).map_err(to_py_err)?;
        PcMatrix::consistent_from_weights(&weights)
            .map(|inner| Self { inner })
            .map_err(to_py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rows(&self) -> Vec<Vec<f64>> {
        self.inner.rows()
    }

    fn get(&self, i: usize, j: usize) -> PyResult<f64> {
        let n = self.inner.n();
        if i >= n || j >= n {
            return Err(PyIndexError::new_err(format!(
                "index ({i}, {j}) out of range for a {n}x{n} matrix"
            )));
        }
        Ok(self.inner.get(i, j))
    }

    fn is_reciprocal(&self) -> bool {
        self.inner.is_reciprocal()
    }

    /// "reciprocal" or "non-reciprocal". ("invalid" is unreachable through
    /// this class; the constructor rejects malformed input.)
    fn classification(&self) -> &'static str {
        match self.inner.validate().class {
            MatrixClass::Reciprocal => "reciprocal",
            MatrixClass::NonReciprocal => "non-reciprocal",
            MatrixClass::Invalid => "invalid",
        }
    }

    /// Human-readable descriptions of diagonal and reciprocity violations,
    /// empty for a reciprocal matrix. Positions in the text are 1-based to
    /// match the CLI and file formats.
    fn violations(&self) -> Vec<String> {
        self.inner
            .validate()
            .violations
            .iter()
            .map(|v| v.to_string())
            .collect()
    }

    /// Whether |1 - m[i][j]*m[j][k]/m[i][k]| <= tol for every ordered
    /// index triple.
    #[pyo3(signature = (tol = 1e-9))]
    fn is_consistent(&self, tol: f64) -> bool {
        self.inner.is_consistent(tol)
    }

    /// The log-space midpoint repair sqrt(m[i][j] / m[j][i]) with a unit
    /// diagonal: always reciprocal, and a fixed point on matrices that
    /// already are.
    fn reciprocalized(&self) -> Self {
        Self {
            inner: self.inner.reciprocalized(),
        }
    }

    /// Row geometric means, unnormalized.
    fn geometric_means(&self) -> Vec<f64> {
        self.inner.row_geometric_means().values().to_vec()
    }

    /// Sum-to-one priority weights. `method` is "gm" (row geometric means)
    /// or "ev" (principal eigenvector).
    #[pyo3(signature = (method = "gm"))]
    fn weights(&self, method: &str) -> PyResult<Vec<f64>> {
        match method {
            "gm" => Ok(self
                .inner
                .row_geometric_means()
                .normalized()
                .values()
                .to_vec()),
            "ev" => spectral::principal_eigenpair(&self.inner)
                .map(|r| r.vector.values().to_vec())
                .map_err(to_py_err),
            other => Err(PyValueError::new_err(format!(
                "unknown method {other:?}, expected \"gm\" or \"ev\""
            ))),
        }
    }

    /// Distance-based inconsistency as a dict with keys "ii", "worst", and
    /// "scores". "worst" is None when n < 3; triad indices are 0-based.
    fn inconsistency<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let report = self.inner.inconsistency();
        let dict = PyDict::new(py);
        dict.set_item("ii", report.ii)?;
        let worst = report.worst.as_ref().map(|s| score_dict(py, s)).transpose()?;
        dict.set_item("worst", worst)?;
        let scores = PyList::empty(py);
        for score in &report.scores {
            scores.append(score_dict(py, score)?)?;
        }
        dict.set_item("scores", scores)?;
        Ok(dict)
    }

    /// Power iteration. Returns (lambda_max, weights, iterations, residual)
    /// with sum-to-one weights. Raises RuntimeError on non-convergence.
    #[pyo3(signature = (tol = 1e-12, max_iters = 10_000))]
    fn principal_eigenpair(
        &self,
        tol: f64,
        max_iters: usize,
    ) -> PyResult<(f64, Vec<f64>, usize, f64)> {
        spectral::principal_eigenpair_with(&self.inner, tol, max_iters)
            .map(|r| (r.lambda_max, r.vector.values().to_vec(), r.iterations, r.residual))
            .map_err(to_py_err)
    }

    /// Saaty consistency index (lambda_max - n) / (n - 1).
    fn saaty_ci(&self) -> PyResult<f64> {
        spectral::saaty_ci(&self.inner).map_err(to_py_err)
    }

    /// Worst-triad reduction. Returns (reduced, trace); the trace dict has
    /// keys "steps" (0-based triads), "steps_taken", "initial_gm",
    /// "final_ii", and "converged". A non-converged run is not an error:
    /// inspect "converged". Requires a reciprocal matrix.
    #[pyo3(signature = (threshold = 1e-6, max_steps = 10_000))]
    fn reduce<'py>(
        &self,
        py: Python<'py>,
        threshold: f64,
        max_steps: usize,
    ) -> PyResult<(Self, Bound<'py, PyDict>)> {
        if !self.inner.is_reciprocal() {
            return Err(PyValueError::new_err(
                "reduce expects a reciprocal matrix; call reciprocalized() first",
            ));
        }
        let config = ReductionConfig::new(threshold, max_steps).map_err(to_py_err)?;
        let (reduced, trace) = reduction::reduce(&self.inner, &config);
        let steps = PyList::empty(py);
        for step in &trace.steps {
            let entry = PyDict::new(py);
            entry.set_item("step", step.step)?;
            entry.set_item("triad", step.triad)?;
            entry.set_item("ii_before", step.ii_before)?;
            entry.set_item("ii_after", step.ii_after)?;
            steps.append(entry)?;
        }
        let dict = PyDict::new(py);
        dict.set_item("steps", steps)?;
        dict.set_item("steps_taken", trace.steps_taken)?;
        dict.set_item("initial_gm", trace.initial_gm.values().to_vec())?;
        dict.set_item("final_ii", trace.final_ii)?;
        dict.set_item("converged", trace.converged)?;
        Ok((Self { inner: reduced }, dict))
    }

    /// The consistent matrix generated by the row geometric means: the
    /// log-Frobenius-closest consistent matrix, and the limit of reduce()
    /// as the threshold goes to zero.
    fn direct_projection(&self) -> Self {
        Self {
            inner: reduction::direct_projection(&self.inner),
        }
    }

    /// Frobenius distance between entrywise logarithms.
    fn log_frobenius_distance(&self, other: &Self) -> PyResult<f64> {
        check_same_n(&self.inner, &other.inner)?;
        Ok(self.inner.log_frobenius_distance(&other.inner))
    }

    /// Frobenius distance between raw entries.
    fn frobenius_distance(&self, other: &Self) -> PyResult<f64> {
        check_same_n(&self.inner, &other.inner)?;
        Ok(self.inner.frobenius_distance(&other.inner))
    }

    /// Largest |a[i][j] - b[i][j]| / b[i][j] over all entries, with `other`
    /// as the reference b.
    fn max_relative_difference(&self, other: &Self) -> PyResult<f64> {
        check_same_n(&self.inner, &other.inner)?;
        Ok(self.inner.max_relative_difference(&other.inner))
    }

    fn __repr__(&self) -> String {
        format!("PcMatrix(n={})", self.inner.n())
    }
}

/// A random reciprocal matrix: a consistent base from weights exp(U(-1, 1))
/// with upper-triangle entries perturbed by exp(U(-beta, beta)). `stream`
/// selects the per-sample RNG stream, so (seed, stream) reproduces sample
/// `stream` of an experiment run with the same seed.
#[pyfunction]
#[pyo3(signature = (n, beta = 1.0, seed = 0, stream = 0))]
fn random_reciprocal(n: usize, beta: f64, seed: u64, stream: u64) -> PyResult<PyPcMatrix> {
    let mut rng = montecarlo::sample_rng(seed, stream);
    montecarlo::random_reciprocal(n, beta, &mut rng)
        .map(|inner| PyPcMatrix { inner })
        .map_err(to_py_err)
}

/// Principal eigenvalue of the reciprocal 3x3 matrix with upper triangle
/// (a, b, c): 1 + cbrt(ac/b) + cbrt(b/(ac)).
#[pyfunction]
fn lambda_3x3(a: f64, b: f64, c: f64) -> PyResult<f64> {
    spectral::lambda_3x3(a, b, c).map_err(to_py_err)
}

/// Monte Carlo experiment over random reciprocal matrices. Returns a dict
/// mirroring the JSON report: "config", "rng_algorithm", per-sample
/// "records", and the aggregate "summary". Deterministic in (config, seed).
#[pyfunction]
#[pyo3(signature = (n, samples, beta = 1.0, seed = 0, threshold = 1e-6, max_steps = 100_000))]
fn run_experiment<'py>(
    py: Python<'py>,
    n: usize,
    samples: usize,
    beta: f64,
    seed: u64,
    threshold: f64,
    max_steps: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let config = ExperimentConfig {
        n,
        samples,
        beta,
        seed,
        threshold,
        max_steps,
    };
    let report = montecarlo::run_experiment(&config).map_err(to_py_err)?;
    report_dict(py, &report)
}

#[pymodule]
fn pcmatrix_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPcMatrix>()?;
    m.add_function(wrap_pyfunction!(random_reciprocal, m)?)?;
    m.add_function(wrap_pyfunction!(lambda_3x3, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    Ok(())
}
