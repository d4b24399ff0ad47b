//! Python bindings: groups, character tables, idempotents and decompositions.
//! Structured results cross the boundary as plain Python dicts and lists.

use std::sync::Arc;

use isotypic::algebra::{central_idempotent_ew, projector_ph, IdempotentSystem};
use isotypic::decomp::{render_full_report, render_report, Decomposer as CoreDecomposer, Verdict};
use isotypic::io::{load_group, load_rep, load_table, table_to_json, verify_manifest};
use isotypic::{Bounds, CharacterTable as CoreTable, Error, FiniteGroup};
use pyo3::exceptions::{PyArithmeticError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::Invalid(_) | Error::Io(_) => PyValueError::new_err(e.to_string()),
        Error::Invariant(_) => PyArithmeticError::new_err(e.to_string()),
        Error::Bound(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn terms(py: Python<'_>, a: &impl std::fmt::Display, pairs: Vec<(String, String)>) -> PyResult<Py<PyAny>> {
    let v = json!({"display": a.to_string(), "terms": pairs.into_iter().map(|(c, g)| json!([g, c])).collect::<Vec<_>>()});
    Ok(to_py(py, &v)?.unbind())
}

/// A finite group given by a presentation, permutations or a Cayley table.
#[pyclass(frozen)]
struct Group {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl Group {
    #[staticmethod]
    #[pyo3(signature = (path, max_order = 10_000))]
    fn load(path: &str, max_order: usize) -> PyResult<Self> {
        let bounds = Bounds { max_group_order: max_order, ..Bounds::default() };
        Ok(Group { inner: Arc::new(load_group(path, &bounds).map_err(to_py_err)?) })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.inner.conjugacy_classes().len()
    }

    #[getter]
    fn generator_names(&self) -> Vec<String> {
        self.inner.generator_names().to_vec()
    }

    /// Normal-form label of element `i`.
    fn label(&self, i: usize) -> PyResult<String> {
        if i >= self.inner.order() {
            return Err(PyValueError::new_err(format!("element {i} out of range")));
        }
        Ok(self.inner.label(i).to_string())
    }

    /// Element index of a word such as `"x^2*y"`.
    fn element(&self, word: &str) -> PyResult<usize> {
        self.inner.parse_element(word).map_err(to_py_err)
    }

    /// Members of the subgroup `"1"`, `"G"` or `"<w1, w2>"`.
    fn subgroup(&self, spec: &str) -> PyResult<Vec<usize>> {
        Ok(self.inner.parse_subgroup(spec).map_err(to_py_err)?.members().to_vec())
    }

    fn character_table(&self) -> PyResult<CharacterTable> {
        Ok(CharacterTable { group: self.inner.clone(), inner: CoreTable::compute(&self.inner).map_err(to_py_err)? })
    }

    fn load_character_table(&self, path: &str) -> PyResult<CharacterTable> {
        Ok(CharacterTable { group: self.inner.clone(), inner: load_table(&self.inner, path).map_err(to_py_err)? })
    }

    fn __repr__(&self) -> String {
        format!("Group(order={}, classes={})", self.inner.order(), self.inner.conjugacy_classes().len())
    }
}

/// Character table with exact cyclotomic values.
#[pyclass(frozen)]
struct CharacterTable {
    group: Arc<FiniteGroup>,
    inner: CoreTable,
}

#[pymethods]
impl CharacterTable {
    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Values of every character as strings, rows in table order.
    fn rows(&self) -> Vec<Vec<String>> {
        self.inner.characters().iter().map(|c| c.values().iter().map(|v| v.to_string()).collect()).collect()
    }

    fn degrees(&self) -> Vec<u32> {
        self.inner.characters().iter().map(|c| c.degree()).collect()
    }

    fn to_dict<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &table_to_json(&self.group, &self.inner))
    }
}

/// Rational irreducibles, subgroup lattice and every `ρ_H` decomposition.
#[pyclass(frozen)]
struct Decomposer {
    inner: CoreDecomposer,
}

impl Decomposer {
    fn irrep(&self, spec: &str) -> PyResult<usize> {
        self.inner.irreps().resolve(spec).map_err(to_py_err)
    }

    fn subgroup(&self, spec: &str) -> PyResult<isotypic::Subgroup> {
        self.inner.group().parse_subgroup(spec).map_err(to_py_err)
    }
}

#[pymethods]
impl Decomposer {
    #[new]
    #[pyo3(signature = (group, table, assert_schur = None))]
    fn new(group: &Group, table: &CharacterTable, assert_schur: Option<Vec<(String, u32)>>) -> PyResult<Self> {
        let g = group.inner.clone();
        let bounds = Bounds::default();
        let lattice = g.subgroups_up_to_conjugacy(&bounds).map_err(to_py_err)?;
        let mut irreps = isotypic::RationalIrreps::new(&table.inner, &lattice).map_err(to_py_err)?;
        for (spec, m) in assert_schur.unwrap_or_default() {
            let w = irreps.resolve(&spec).map_err(to_py_err)?;
            irreps.assert_schur(w, m, "asserted from Python").map_err(to_py_err)?;
        }
        let inner = CoreDecomposer::new(g, table.inner.clone(), lattice, irreps).map_err(to_py_err)?;
        Ok(Decomposer { inner })
    }

    /// Labels of the rational irreducibles, `2(V13+V14)` style.
    fn irreps(&self) -> Vec<String> {
        (0..self.inner.irreps().len()).map(|j| self.inner.irrep_label(j)).collect()
    }

    fn schur_status(&self, irrep: &str) -> PyResult<String> {
        Ok(self.inner.irreps().get(self.irrep(irrep)?).schur.to_string())
    }

    fn subgroup_classes<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json!(self.inner.subgroup_info()))
    }

    /// Multiplicities of the rational irreducibles in `ρ_H`.
    fn rho(&self, h: &str) -> PyResult<Vec<u32>> {
        let i = self.inner.class_of(&self.inner.group().canonicalize(&self.subgroup(h)?)).map_err(to_py_err)?;
        Ok(self.inner.rho(i).to_vec())
    }

    fn decompose_jacobian<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json!(self.inner.decompose_jacobian()))
    }

    fn decompose_intermediate<'py>(&self, py: Python<'py>, h: &str) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json!(self.inner.decompose_intermediate(&self.subgroup(h)?).map_err(to_py_err)?))
    }

    fn decompose_prym<'py>(&self, py: Python<'py>, h: &str, n: &str) -> PyResult<Bound<'py, PyAny>> {
        let r = self.inner.decompose_prym(&self.subgroup(h)?, &self.subgroup(n)?).map_err(to_py_err)?;
        to_py(py, &json!(r))
    }

    fn render_prym(&self, h: &str, n: &str) -> PyResult<String> {
        let r = self.inner.decompose_prym(&self.subgroup(h)?, &self.subgroup(n)?).map_err(to_py_err)?;
        Ok(render_report(&self.inner, &r))
    }

    /// The realization of `B_W`: a dict tagged by `kind`
    /// (`prym_pair`, `intersection`, `complement`).
    #[pyo3(signature = (irrep, max_arity = 4))]
    fn classify<'py>(&self, py: Python<'py>, irrep: &str, max_arity: usize) -> PyResult<Bound<'py, PyAny>> {
        let w = self.irrep(irrep)?;
        let v = if w == 0 { Verdict::Unresolved } else { self.inner.classify_factor(w, max_arity) };
        to_py(py, &json!(v))
    }

    /// `((S, R), (X, Y))` subgroup names with `ρ_S − ρ_R = ρ_X − ρ_Y`.
    fn prym_isogenies(&self) -> Vec<((String, String), (String, String))> {
        let n = |i: usize| self.inner.name(i).to_string();
        self.inner.find_prym_isogenies().into_iter().map(|p| ((n(p.s), n(p.r)), (n(p.x), n(p.y)))).collect()
    }

    #[pyo3(signature = (max_arity = 4))]
    fn full_report<'py>(&self, py: Python<'py>, max_arity: usize) -> PyResult<Bound<'py, PyAny>> {
        to_py(py, &json!(self.inner.full_report(max_arity)))
    }

    #[pyo3(signature = (max_arity = 4))]
    fn render_full_report(&self, max_arity: usize) -> String {
        render_full_report(&self.inner, &self.inner.full_report(max_arity))
    }

    /// `e_W` as `{"display", "terms": [[label, coefficient], ...]}`.
    fn central_idempotent(&self, py: Python<'_>, irrep: &str) -> PyResult<Py<PyAny>> {
        let w = self.inner.irreps().get(self.irrep(irrep)?);
        let e = central_idempotent_ew(self.inner.group(), self.inner.table(), w).map_err(to_py_err)?;
        let t = e.render_terms();
        terms(py, &e, t)
    }

    /// `f_H = p_H e_W`.
    fn subgroup_idempotent(&self, py: Python<'_>, h: &str, irrep: &str) -> PyResult<Py<PyAny>> {
        let w = self.inner.irreps().get(self.irrep(irrep)?);
        let g = self.inner.group();
        let e = central_idempotent_ew(g, self.inner.table(), w).map_err(to_py_err)?;
        let f = projector_ph(g, &self.subgroup(h)?).mul(&e);
        let t = f.render_terms();
        terms(py, &f, t)
    }

    /// Builds the primitive system from a representation file and returns
    /// `(passed, checks, {"k": [...], "f": [...]})`.
    fn primitive_system<'py>(&self, py: Python<'py>, rep_path: &str) -> PyResult<(bool, Vec<(String, bool)>, Bound<'py, PyAny>)> {
        let rep = load_rep(self.inner.group(), self.inner.table(), rep_path).map_err(to_py_err)?;
        let irreps = self.inner.irreps();
        let w = irreps.get(irreps.of_character(rep.character()));
        let sys = IdempotentSystem::construct(&rep, self.inner.table(), w).map_err(to_py_err)?;
        let t = sys.verify();
        let checks = t.checks.iter().map(|c| (c.name.clone(), c.passed)).collect();
        let out = json!({
            "schur_index": sys.schur_index,
            "k": sys.k.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            "f": sys.f.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        });
        Ok((t.all_passed(), checks, to_py(py, &out)?))
    }
}

/// Checks every relation of a fixture manifest; returns `(passed, checks)`.
#[pyfunction]
fn verify_fixture(path: &str) -> PyResult<(bool, Vec<(String, bool, String)>)> {
    let t = verify_manifest(path, &Bounds::default()).map_err(to_py_err)?;
    Ok((t.all_passed(), t.checks.into_iter().map(|c| (c.name, c.passed, c.detail)).collect()))
}

#[pymodule]
fn isotypic_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_class::<CharacterTable>()?;
    m.add_class::<Decomposer>()?;
    m.add_function(wrap_pyfunction!(verify_fixture, m)?)?;
    Ok(())
}
