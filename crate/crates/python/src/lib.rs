//! Python bindings for the chowpoly core library.
//!
//! Polynomials cross the boundary as ascending coefficient lists of Python
//! ints (index = degree). ab-polynomials become dicts mapping words like
//! "ab" to the coefficient list of their y-polynomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;

use chowpoly::build::GraphInput;
use chowpoly::{ABPolynomial, EdgeLabeling, Error, GradedPoset, IntPolynomial};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Io(io) => PyIOError::new_err(io.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn coeff_list(p: &IntPolynomial) -> Vec<BigInt> {
    p.coeffs().to_vec()
}

fn ab_dict(p: &ABPolynomial) -> BTreeMap<String, Vec<BigInt>> {
    p.terms()
        .map(|(word, coeff)| (word.to_string(), coeff_list(coeff)))
        .collect()
}

/// A finite graded poset with a unique bottom and top, optionally carrying
/// an edge labeling on its cover relations.
#[pyclass(frozen, module = "chowpoly_py")]
struct Poset {
    inner: GradedPoset,
    labeling: Option<EdgeLabeling>,
}

impl Poset {
    fn wrap((inner, labeling): (GradedPoset, EdgeLabeling)) -> Self {
        Poset {
            inner,
            labeling: Some(labeling),
        }
    }

    fn index(&self, name: &str) -> PyResult<usize> {
        self.inner
            .index_of(name)
            .ok_or_else(|| PyValueError::new_err(format!("no element named {name:?}")))
    }

    fn labeling_or_err(&self) -> PyResult<&EdgeLabeling> {
        self.labeling
            .as_ref()
            .ok_or_else(|| PyValueError::new_err("poset has no labeling"))
    }
}

#[pymethods]
impl Poset {
    /// Build a poset from element names and named cover pairs, with optional
    /// labels keyed by (lower, upper) name pairs.
    #[new]
    #[pyo3(signature = (elements, covers, labels = None))]
    fn new(
        elements: Vec<String>,
        covers: Vec<(String, String)>,
        labels: Option<BTreeMap<(String, String), u32>>,
    ) -> PyResult<Self> {
        let mut index = BTreeMap::new();
        for (i, name) in elements.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(PyValueError::new_err(format!(
                    "duplicate element name {name:?}"
                )));
            }
        }
        let find = |name: &String| -> PyResult<usize> {
            index
                .get(name)
                .copied()
                .ok_or_else(|| PyValueError::new_err(format!("no element named {name:?}")))
        };
        let mut cover_ids = Vec::with_capacity(covers.len());
        for (lo, hi) in &covers {
            cover_ids.push((find(lo)?, find(hi)?));
        }
        let inner = GradedPoset::from_named_covers(elements, cover_ids).map_err(to_py_err)?;
        let labeling = match labels {
            None => None,
            Some(map) => {
                let mut l = EdgeLabeling::new();
                for ((lo, hi), label) in &map {
                    let (lo_id, hi_id) = (find(lo)?, find(hi)?);
                    if !inner.upper_covers(lo_id).contains(&hi_id) {
                        return Err(PyValueError::new_err(format!(
                            "({lo:?}, {hi:?}) is not a cover relation"
                        )));
                    }
                    l.set(lo_id, hi_id, *label).map_err(to_py_err)?;
                }
                Some(l)
            }
        };
        Ok(Poset { inner, labeling })
    }

    fn __repr__(&self) -> String {
        format!(
            "Poset(rank={}, elements={}, labeled={})",
            self.inner.rank(),
            self.inner.n_elements(),
            self.labeling.is_some()
        )
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn n_elements(&self) -> usize {
        self.inner.n_elements()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn covers(&self) -> Vec<(String, String)> {
        self.inner
            .covers()
            .iter()
            .map(|&(lo, hi)| {
                (
                    self.inner.name(lo).to_string(),
                    self.inner.name(hi).to_string(),
                )
            })
            .collect()
    }

    fn labels(&self) -> Option<BTreeMap<(String, String), u32>> {
        self.labeling.as_ref().map(|l| {
            l.iter()
                .map(|((lo, hi), label)| {
                    (
                        (
                            self.inner.name(lo).to_string(),
                            self.inner.name(hi).to_string(),
                        ),
                        label,
                    )
                })
                .collect()
        })
    }

    /// Mobius function value between two named elements.
    fn mobius(&self, f: &str, g: &str) -> PyResult<BigInt> {
        let (f, g) = (self.index(f)?, self.index(g)?);
        self.inner.mobius(f, g).map_err(to_py_err)
    }

    fn poincare(&self) -> Vec<BigInt> {
        coeff_list(&self.inner.poincare_polynomial())
    }

    fn characteristic(&self) -> Vec<BigInt> {
        coeff_list(&self.inner.characteristic_polynomial())
    }

    fn reduced_characteristic(&self) -> PyResult<Vec<BigInt>> {
        self.inner
            .reduced_characteristic_polynomial()
            .map(|p| coeff_list(&p))
            .map_err(to_py_err)
    }

    fn maximal_chain_count(&self) -> BigInt {
        self.inner.maximal_chain_count()
    }

    /// Chow polynomial coefficients via "chains", "descents", or "extab".
    #[pyo3(signature = (method = "chains"))]
    fn chow(&self, method: &str) -> PyResult<Vec<BigInt>> {
        let p = match method {
            "chains" => chowpoly::chow::chow_by_chains(&self.inner),
            "extab" => chowpoly::chow::chow_by_extab(&self.inner).map_err(to_py_err)?,
            "descents" => {
                let l = self.labeling_or_err()?;
                chowpoly::chow::chow_by_descents(&self.inner, l).map_err(to_py_err)?
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown method {other:?}; expected chains, descents, or extab"
                )))
            }
        };
        Ok(coeff_list(&p))
    }

    /// Augmented Chow polynomial coefficients; same methods as chow().
    #[pyo3(signature = (method = "chains"))]
    fn augmented_chow(&self, method: &str) -> PyResult<Vec<BigInt>> {
        let p = match method {
            "chains" => chowpoly::chow::augmented_chow_by_chains(&self.inner),
            "extab" => chowpoly::chow::augmented_chow_by_extab(&self.inner).map_err(to_py_err)?,
            "descents" => {
                let l = self.labeling_or_err()?;
                chowpoly::chow::augmented_chow_by_descents(&self.inner, l).map_err(to_py_err)?
            }
            other => {
                return Err(PyValueError::new_err(format!(
                    "unknown method {other:?}; expected chains, descents, or extab"
                )))
            }
        };
        Ok(coeff_list(&p))
    }

    fn ab_index(&self) -> BTreeMap<String, Vec<BigInt>> {
        ab_dict(&chowpoly::extab::ab_index(&self.inner))
    }

    fn ext_ab_index(&self) -> BTreeMap<String, Vec<BigInt>> {
        ab_dict(&chowpoly::extab::ext_ab_index(&self.inner))
    }

    fn ext_ab_index_truncated(&self) -> PyResult<BTreeMap<String, Vec<BigInt>>> {
        chowpoly::extab::ext_ab_index_truncated(&self.inner)
            .map(|p| ab_dict(&p))
            .map_err(to_py_err)
    }

    /// True when the attached labeling is an R-labeling.
    fn verify_r_labeling(&self) -> PyResult<bool> {
        let l = self.labeling_or_err()?;
        chowpoly::rlabel::verify_r_labeling(&self.inner, l).map_err(to_py_err)
    }

    /// None when the labeling verifies; otherwise a description of the first
    /// violating interval.
    fn r_labeling_violation(&self) -> PyResult<Option<String>> {
        let l = self.labeling_or_err()?;
        Ok(chowpoly::rlabel::check_r_labeling(&self.inner, l)
            .map_err(to_py_err)?
            .map(|v| v.to_string()))
    }

    /// Write the poset (and labeling, if any) to a JSON file.
    fn save(&self, path: &str) -> PyResult<()> {
        chowpoly::build::save_poset(path, &self.inner, self.labeling.as_ref()).map_err(to_py_err)
    }
}

#[pyfunction]
fn boolean_lattice(n: usize) -> PyResult<Poset> {
    chowpoly::build::boolean_lattice(n)
        .map(Poset::wrap)
        .map_err(to_py_err)
}

#[pyfunction]
fn partition_lattice(n: usize) -> PyResult<Poset> {
    chowpoly::braid::partition_lattice(n)
        .map(Poset::wrap)
        .map_err(to_py_err)
}

#[pyfunction]
fn uniform_matroid_flats(k: usize, m: usize) -> PyResult<Poset> {
    chowpoly::build::uniform_matroid_flats(k, m)
        .map(Poset::wrap)
        .map_err(to_py_err)
}

/// Bond lattice of the graph on vertices 1..=vertices with the given edges.
#[pyfunction]
fn bond_lattice(vertices: usize, edges: Vec<(u32, u32)>) -> PyResult<Poset> {
    let graph = GraphInput::new(vertices, edges).map_err(to_py_err)?;
    chowpoly::build::bond_lattice(&graph)
        .map(Poset::wrap)
        .map_err(to_py_err)
}

#[pyfunction]
fn load_poset(path: &str) -> PyResult<Poset> {
    let (inner, labeling) = chowpoly::build::load_poset(path).map_err(to_py_err)?;
    Ok(Poset { inner, labeling })
}

/// Chow polynomial of the rank-n braid arrangement lattice via the closed
/// descent-count expansion; no lattice is built.
#[pyfunction]
fn chow_braid(n: usize) -> PyResult<Vec<BigInt>> {
    chowpoly::braid::chow_braid(n)
        .map(|p| coeff_list(&p))
        .map_err(to_py_err)
}

#[pyfunction]
fn augmented_chow_braid(n: usize) -> PyResult<Vec<BigInt>> {
    chowpoly::braid::augmented_chow_braid(n)
        .map(|p| coeff_list(&p))
        .map_err(to_py_err)
}

#[pyfunction]
#[pyo3(signature = (n, augmented = false))]
fn braid_gamma(n: usize, augmented: bool) -> PyResult<Vec<BigInt>> {
    chowpoly::braid::braid_gamma(n, augmented).map_err(to_py_err)
}

/// Gamma vector of a palindromic polynomial given by its coefficient list.
#[pyfunction]
fn gamma_vector(coeffs: Vec<BigInt>, center_degree: usize) -> PyResult<Vec<BigInt>> {
    IntPolynomial::new(coeffs)
        .gamma_vector(center_degree)
        .map(|g| g.gammas)
        .map_err(to_py_err)
}

#[pyfunction]
fn is_palindromic(coeffs: Vec<BigInt>, center_degree: usize) -> bool {
    IntPolynomial::new(coeffs).is_palindromic(center_degree)
}

#[pyfunction]
fn is_unimodal(coeffs: Vec<BigInt>) -> bool {
    IntPolynomial::new(coeffs).is_unimodal()
}

/// True when all roots are real (exact Sturm-chain count).
#[pyfunction]
fn real_roots_diagnostic(coeffs: Vec<BigInt>) -> bool {
    IntPolynomial::new(coeffs).real_roots_diagnostic()
}

/// Inversion sequence of a maximal-chain label word (a permutation of
/// {2, ..., n+1}).
#[pyfunction]
fn inversion_sequence(word: Vec<u32>) -> PyResult<Vec<u32>> {
    chowpoly::braid::inversion_sequence(&word)
        .map(|s| s.entries().to_vec())
        .map_err(to_py_err)
}

#[pyfunction]
fn inversion_sequence_inverse(entries: Vec<u32>) -> PyResult<Vec<u32>> {
    chowpoly::braid::inversion_sequence_inverse(&entries).map_err(to_py_err)
}

/// Number of maximal chains of the partition lattice carrying the word.
#[pyfunction]
fn count_chains_with_label(word: Vec<u32>) -> PyResult<BigInt> {
    chowpoly::braid::count_chains_with_label(&word).map_err(to_py_err)
}

#[pymodule]
fn chowpoly_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poset>()?;
    m.add_function(wrap_pyfunction!(boolean_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(partition_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_matroid_flats, m)?)?;
    m.add_function(wrap_pyfunction!(bond_lattice, m)?)?;
    m.add_function(wrap_pyfunction!(load_poset, m)?)?;
    m.add_function(wrap_pyfunction!(chow_braid, m)?)?;
    m.add_function(wrap_pyfunction!(augmented_chow_braid, m)?)?;
    m.add_function(wrap_pyfunction!(braid_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_vector, m)?)?;
    m.add_function(wrap_pyfunction!(is_palindromic, m)?)?;
    m.add_function(wrap_pyfunction!(is_unimodal, m)?)?;
    m.add_function(wrap_pyfunction!(real_roots_diagnostic, m)?)?;
    m.add_function(wrap_pyfunction!(inversion_sequence, m)?)?;
    m.add_function(wrap_pyfunction!(inversion_sequence_inverse, m)?)?;
    m.add_function(wrap_pyfunction!(count_chains_with_label, m)?)?;
    Ok(())
}
