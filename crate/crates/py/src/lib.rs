//! Python bindings: the operator type plus the analysis entry points,
//! returning plain dicts/lists mirroring the CLI's JSON reports.

use num_complex::Complex64;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyList};

use perron_core::error::PerronError;
use perron_core::generators::{self, RandomKind};
use perron_core::growth::{self, schemes::WeightingScheme, GridParams};
use perron_core::lattice::{
    invariant_ideals, CoordinateIdeal, LatticeVector, NormChoice, PositiveOperator,
};
use perron_core::spectral;
use perron_core::structure;
use perron_core::theorems;
use perron_core::tol;

fn perr(e: PerronError) -> PyErr {
    match e {
        PerronError::NegativeEntry { .. } | PerronError::NotCertified => {
            PyValueError::new_err(e.to_string())
        }
        PerronError::EigenFailed { .. } => PyRuntimeError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse_norm(norm: &str) -> PyResult<NormChoice> {
    match norm {
        "1" => Ok(NormChoice::One),
        "2" => Ok(NormChoice::Two),
        "inf" => Ok(NormChoice::Inf),
        other => Err(PyValueError::new_err(format!("unsupported norm {other:?}"))),
    }
}

/// serde_json -> Python objects (dicts, lists, floats, bools, strings)
fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyObject {
    match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::new_bound(py, items.iter().map(|x| json_to_py(py, x)));
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, val) in map {
                let _ = dict.set_item(k, json_to_py(py, val));
            }
            dict.into_py(py)
        }
    }
}

fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let v = serde_json::to_value(value)
        .map_err(|e| PyRuntimeError::new_err(format!("serialization failed: {e}")))?;
    Ok(json_to_py(py, &v))
}

/// Dense complex square matrix acting as a positive operator when its
/// entries certify exactly nonnegative.
#[pyclass(name = "Operator")]
struct PyOperator {
    inner: PositiveOperator,
}

#[pymethods]
impl PyOperator {
    /// Operator(rows, norm="inf"): rows is a nested list of numbers or
    /// complex values.
    #[new]
    #[pyo3(signature = (rows, norm = "inf"))]
    fn new(rows: Vec<Vec<Complex64>>, norm: &str) -> PyResult<Self> {
        let inner = PositiveOperator::from_rows(&rows, parse_norm(norm)?).map_err(perr)?;
        Ok(Self { inner })
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn nonneg_certified(&self) -> bool {
        self.inner.nonneg_certified()
    }

    #[getter]
    fn norm_choice(&self) -> String {
        self.inner.norm_choice().to_string()
    }

    fn entry(&self, py: Python<'_>, i: usize, j: usize) -> PyResult<PyObject> {
        if i >= self.inner.dim() || j >= self.inner.dim() {
            return Err(PyValueError::new_err("index out of range"));
        }
        let z = self.inner.matrix().get(i, j);
        Ok(PyComplex::from_doubles_bound(py, z.re, z.im).into_py(py))
    }

    fn rows(&self, py: Python<'_>) -> PyObject {
        let n = self.inner.dim();
        let rows = PyList::new_bound(
            py,
            (0..n).map(|i| {
                PyList::new_bound(
                    py,
                    (0..n).map(|j| {
                        let z = self.inner.matrix().get(i, j);
                        PyComplex::from_doubles_bound(py, z.re, z.im)
                    }),
                )
            }),
        );
        rows.into_py(py)
    }

    /// Operator norm in the declared lattice norm.
    fn operator_norm(&self) -> f64 {
        self.inner.norm()
    }

    /// Clustered spectrum with multiplicities, indices, and the peripheral
    /// subset.
    fn spectrum(&self, py: Python<'_>) -> PyResult<PyObject> {
        let spec = spectral::spectrum(&self.inner).map_err(perr)?;
        to_py(py, &spec)
    }

    /// Peripheral spectral values as complex numbers.
    fn peripheral(&self, py: Python<'_>) -> PyResult<PyObject> {
        let spec = spectral::spectrum(&self.inner).map_err(perr)?;
        let list = PyList::new_bound(
            py,
            spec.peripheral
                .iter()
                .map(|z| PyComplex::from_doubles_bound(py, z.re, z.im)),
        );
        Ok(list.into_py(py))
    }

    fn adjoint(&self) -> PyOperator {
        PyOperator {
            inner: spectral::adjoint(&self.inner),
        }
    }

    /// Strong-connectivity structure: components, irreducibility, period.
    fn irreducibility(&self, py: Python<'_>) -> PyResult<PyObject> {
        let r = structure::irreducibility(&self.inner).map_err(perr)?;
        to_py(py, &r)
    }

    /// Cyclicity report for the peripheral spectrum.
    fn cyclicity(&self, py: Python<'_>) -> PyResult<PyObject> {
        let spec = spectral::spectrum(&self.inner).map_err(perr)?;
        let cyc = spectral::is_cyclic_set(
            &spec.peripheral,
            spec.spectral_radius,
            tol::ANGULAR_TOL,
            Some(self.inner.dim()),
        )
        .map_err(perr)?;
        to_py(py, &cyc)
    }

    /// Invariant coordinate ideals (0-based index lists).
    fn invariant_ideals(&self, py: Python<'_>) -> PyResult<PyObject> {
        let e = invariant_ideals(&self.inner).map_err(perr)?;
        let dict = PyDict::new_bound(py);
        dict.set_item("exhaustive", e.exhaustive)?;
        dict.set_item(
            "ideals",
            PyList::new_bound(py, e.ideals.iter().map(|i| i.indices())),
        )?;
        Ok(dict.into_py(py))
    }

    /// Resolvent growth profile along `r_n * lambda`, optionally with
    /// directed norms for a supplied vector.
    #[pyo3(signature = (lam = None, z = None, n_min = 2, n_max = 26))]
    fn growth_profile(
        &self,
        py: Python<'_>,
        lam: Option<Complex64>,
        z: Option<Vec<Complex64>>,
        n_min: u32,
        n_max: u32,
    ) -> PyResult<PyObject> {
        let lambda = lam.unwrap_or(Complex64::new(1.0, 0.0));
        let zv = z.map(LatticeVector::new);
        let grid = GridParams::with_range(n_min, n_max);
        let profile =
            growth::growth_profile(&self.inner, lambda, zv.as_ref(), &grid).map_err(perr)?;
        to_py(py, &profile)
    }

    /// Power and Cesaro boundedness over a finite horizon.
    #[pyo3(signature = (horizon = 100))]
    fn power_and_cesaro(&self, py: Python<'_>, horizon: usize) -> PyResult<PyObject> {
        to_py(py, &growth::power_and_cesaro(&self.inner, horizon))
    }

    /// Abel boundedness along the dyadic grid.
    #[pyo3(signature = (n_min = 2, n_max = 18))]
    fn abel_bound(&self, py: Python<'_>, n_min: u32, n_max: u32) -> PyResult<PyObject> {
        let ab =
            growth::abel_bound(&self.inner, &GridParams::with_range(n_min, n_max)).map_err(perr)?;
        to_py(py, &ab)
    }

    /// Uniform boundedness of a weighting-scheme family.
    #[pyo3(signature = (scheme = "cesaro", depth = 48))]
    fn ws_bound(&self, py: Python<'_>, scheme: &str, depth: u64) -> PyResult<PyObject> {
        let scheme = WeightingScheme::by_name(scheme, depth)
            .ok_or_else(|| PyValueError::new_err(format!("unknown scheme {scheme:?}")))?;
        let n = scheme.indices().len();
        to_py(py, &growth::ws_bound(&self.inner, &scheme, n).map_err(perr)?)
    }

    /// Diagonal-power condition verdict (one-sided).
    #[pyo3(signature = (horizon = 16))]
    fn zhang_condition(&self, py: Python<'_>, horizon: usize) -> PyResult<PyObject> {
        to_py(py, &structure::zhang_condition(&self.inner, horizon).map_err(perr)?)
    }

    /// Verify a theorem on this operator. Returns the structured verdict;
    /// the `conclusion` field is "Holds", "Fails", or "NotApplicable".
    #[pyo3(signature = (theorem, lam = None, z = None, scheme = "cesaro", depth = 48, mode = "fixed", n_min = 2, n_max = 26, ideal = None))]
    #[allow(clippy::too_many_arguments)]
    fn verify(
        &self,
        py: Python<'_>,
        theorem: &str,
        lam: Option<Complex64>,
        z: Option<Vec<Complex64>>,
        scheme: &str,
        depth: u64,
        mode: &str,
        n_min: u32,
        n_max: u32,
        ideal: Option<Vec<usize>>,
    ) -> PyResult<PyObject> {
        let grid = GridParams::with_range(n_min, n_max);
        let t = &self.inner;
        let spec = spectral::spectrum(t).map_err(perr)?;
        let lambda = lam
            .or_else(|| {
                spec.peripheral.iter().copied().min_by(|a, b| {
                    a.arg()
                        .rem_euclid(std::f64::consts::TAU)
                        .total_cmp(&b.arg().rem_euclid(std::f64::consts::TAU))
                })
            })
            .unwrap_or(Complex64::new(1.0, 0.0));
        let zvec = match z {
            Some(entries) => {
                let v = LatticeVector::new(entries);
                let n = v.norm(t.norm_choice());
                if n <= 0.0 {
                    return Err(PyValueError::new_err("direction vector is zero"));
                }
                v.scale(Complex64::new(1.0 / n, 0.0))
            }
            None => theorems::unit_eigenvector(t, lambda)
                .unwrap_or_else(|| LatticeVector::unit(t.dim(), 0)),
        };
        let ws = WeightingScheme::by_name(scheme, depth)
            .ok_or_else(|| PyValueError::new_err(format!("unknown scheme {scheme:?}")))?;
        let j_prefix = ws.indices().len();
        match theorem {
            "thm1.2a" | "thm1.2b" | "thm1.2c" => {
                let variant = match theorem {
                    "thm1.2a" => theorems::Thm12Variant::A,
                    "thm1.2b" => theorems::Thm12Variant::B,
                    _ => theorems::Thm12Variant::C,
                };
                to_py(
                    py,
                    &theorems::verify_thm_1_2(t, lambda, &zvec, variant, &grid).map_err(perr)?,
                )
            }
            "prop3.1" => {
                let mode = match mode {
                    "orbit" | "power_bounded_orbit" => theorems::Prop31Mode::PowerBoundedOrbit,
                    _ => theorems::Prop31Mode::DominatingFixedVector,
                };
                to_py(
                    py,
                    &theorems::verify_prop_3_1(t, lambda, &zvec, mode, tol::POWER_HORIZON)
                        .map_err(perr)?,
                )
            }
            "thm3.5" => to_py(py, &theorems::verify_dae(t, lambda, &grid).map_err(perr)?),
            "thm4.1" => to_py(py, &theorems::verify_thm_4_1(t, lambda, &grid).map_err(perr)?),
            "cor4.2" => to_py(py, &theorems::verify_cor_4_2(t, lambda, &grid).map_err(perr)?),
            "kr2.1a" | "kr2.1b" | "kr2.1c" => {
                let variant = match theorem {
                    "kr2.1a" => theorems::KrVariant::A,
                    "kr2.1b" => theorems::KrVariant::B,
                    _ => theorems::KrVariant::C,
                };
                to_py(
                    py,
                    &theorems::verify_kr_2_1(t, lambda, variant, None, &grid).map_err(perr)?,
                )
            }
            "cor5.6" => to_py(
                py,
                &theorems::verify_cor_5_6(t, &ws, j_prefix, &grid).map_err(perr)?,
            ),
            "thm5.8" => to_py(
                py,
                &theorems::verify_thm_5_8(t, &ws, j_prefix, &grid).map_err(perr)?,
            ),
            "appA1" => {
                let f = match ideal {
                    Some(indices) => {
                        CoordinateIdeal::from_indices(&indices, t.dim()).map_err(perr)?
                    }
                    None => CoordinateIdeal::full(t.dim()),
                };
                to_py(py, &theorems::verify_appendix_a1(t, &f).map_err(perr)?)
            }
            other => Err(PyValueError::new_err(format!(
                "unknown theorem id {other:?}"
            ))),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Operator(dim={}, norm={}, nonneg_certified={})",
            self.inner.dim(),
            self.inner.norm_choice(),
            self.inner.nonneg_certified()
        )
    }
}

/// Block-cyclic family with period p and spectral radius 1.
#[pyfunction]
#[pyo3(signature = (p, block_dim = 1, seed = 0))]
fn cycle(p: usize, block_dim: usize, seed: u64) -> PyResult<PyOperator> {
    let (t, _) = generators::cyclic_family(p, block_dim, seed).map_err(perr)?;
    Ok(PyOperator { inner: t })
}

/// Upper-bidiagonal growth block with pole order m, plus optional cycles.
#[pyfunction]
#[pyo3(signature = (m, decorations = vec![]))]
fn jordan(m: usize, decorations: Vec<usize>) -> PyResult<PyOperator> {
    let (t, _) = generators::jordan_growth_family(m, &decorations).map_err(perr)?;
    Ok(PyOperator { inner: t })
}

/// Seeded random families: "dense", "stochastic", or "reducible".
#[pyfunction]
#[pyo3(signature = (kind, n, seed = 0))]
fn random_operator(py: Python<'_>, kind: &str, n: usize, seed: u64) -> PyResult<PyObject> {
    let k = RandomKind::parse(kind)
        .ok_or_else(|| PyValueError::new_err(format!("unknown family {kind:?}")))?;
    let (t, truth) = generators::random_families(k, n, seed).map_err(perr)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("operator", PyOperator { inner: t }.into_py(py))?;
    dict.set_item("truth", to_py(py, &truth)?)?;
    Ok(dict.into_py(py))
}

#[pymodule]
fn perron_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    perron_core::configure_parallelism_from_env();
    m.add_class::<PyOperator>()?;
    m.add_function(wrap_pyfunction!(cycle, m)?)?;
    m.add_function(wrap_pyfunction!(jordan, m)?)?;
    m.add_function(wrap_pyfunction!(random_operator, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
