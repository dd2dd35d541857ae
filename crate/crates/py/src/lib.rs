use std::collections::BTreeMap;

use masterlist::format::{format_master_list, parse_matching};
use masterlist::generators::{gen_four_cycles, gen_jkn, gen_random};
use masterlist::{
    admits_master_list, blocking_edges, delta_edge_2approx, delta_edge_exact, delta_swap, delta_vert_exact,
    enum_stable, is_popular, parse_instance, serialize_instance, solve_mupmic_auto, Edge, Matching,
    MupmicInstance, PreferenceSystem,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: masterlist::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

type NamedEdge = (String, String);

/// A two-sided or one-sided preference system.
#[pyclass(name = "Instance", frozen, module = "masterlist_py")]
struct Instance {
    inner: PreferenceSystem,
}

impl Instance {
    fn named(&self, e: Edge) -> NamedEdge {
        let (a, b) = self.inner.edge_names(e);
        (a.to_owned(), b.to_owned())
    }

    fn matching(&self, edges: &[NamedEdge]) -> PyResult<Matching> {
        let es = edges
            .iter()
            .map(|(a, b)| self.inner.edge_by_names(a, b))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        Matching::new(es).map_err(err)
    }

    fn named_matching(&self, m: &Matching) -> Vec<NamedEdge> {
        m.edges().iter().map(|&e| self.named(e)).collect()
    }
}

#[pymethods]
impl Instance {
    /// Parses the `v : a = b > c` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(Instance { inner: parse_instance(text).map_err(err)? })
    }

    fn serialize(&self) -> String {
        serialize_instance(&self.inner)
    }

    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn edges(&self) -> Vec<NamedEdge> {
        self.inner.edges().into_iter().map(|e| self.named(e)).collect()
    }

    fn is_strict(&self) -> bool {
        self.inner.is_strict()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Instance(vertices={}, edges={})", self.inner.len(), self.inner.edge_count())
    }

    /// Master list as text, or None.
    fn master_list(&self) -> Option<String> {
        admits_master_list(&self.inner).map(|ml| format_master_list(&self.inner, &ml))
    }

    /// Swap distance and the resulting instance, or None above the budget.
    fn swap_distance(&self, budget: u64) -> Option<(u64, Instance)> {
        delta_swap(&self.inner, budget).map(|w| (w.value, Instance { inner: w.witness_instance }))
    }

    #[pyo3(signature = (budget, approx = false))]
    fn edge_distance(&self, budget: usize, approx: bool) -> Option<Vec<NamedEdge>> {
        let w = if approx { delta_edge_2approx(&self.inner, budget) } else { delta_edge_exact(&self.inner, budget) };
        w.map(|w| w.edges.into_iter().map(|e| self.named(e)).collect())
    }

    fn vertex_distance(&self, budget: usize) -> Option<Vec<String>> {
        delta_vert_exact(&self.inner, budget)
            .map(|w| w.vertices.into_iter().map(|v| self.inner.name(v).to_owned()).collect())
    }

    fn stable_matchings(&self, py: Python<'_>) -> PyResult<Vec<Vec<NamedEdge>>> {
        let all = py.detach(|| enum_stable(&self.inner)).map_err(err)?;
        Ok(all.iter().map(|m| self.named_matching(m)).collect())
    }

    fn blocking_edges(&self, matching: Vec<NamedEdge>) -> PyResult<Vec<NamedEdge>> {
        let m = self.matching(&matching)?;
        Ok(blocking_edges(&self.inner, &m).into_iter().map(|e| self.named(e)).collect())
    }

    fn is_popular(&self, matching: Vec<NamedEdge>) -> PyResult<bool> {
        let m = self.matching(&matching)?;
        is_popular(&self.inner, &m).map_err(err)
    }

    /// Parses a matching written one `a -- b` edge per line.
    fn parse_matching(&self, text: &str) -> PyResult<Vec<NamedEdge>> {
        let m = parse_matching(&self.inner, text).map_err(err)?;
        Ok(self.named_matching(&m))
    }

    /// Popular matching of utility at least `target` whose blocking edges
    /// cost at most `budget`. Weights map each edge to (utility, cost).
    fn mupmic(
        &self,
        py: Python<'_>,
        weights: BTreeMap<NamedEdge, (u64, u64)>,
        target: u64,
        budget: u64,
    ) -> PyResult<Option<(Vec<NamedEdge>, u64, u64)>> {
        let mut utility = BTreeMap::new();
        let mut cost = BTreeMap::new();
        for ((a, b), (u, c)) in weights {
            let e = self.inner.edge_by_names(&a, &b).map_err(err)?;
            utility.insert(e, u);
            cost.insert(e, c);
        }
        let inst = MupmicInstance::new(self.inner.clone(), utility, cost, target, budget).map_err(err)?;
        let sol = py.detach(|| solve_mupmic_auto(&inst)).map_err(err)?;
        Ok(sol.map(|s| (self.named_matching(&s.matching), s.utility, s.cost)))
    }
}

#[pyfunction]
fn four_cycles(k: usize) -> Instance {
    Instance { inner: gen_four_cycles(k) }
}

#[pyfunction]
fn jkn(k: usize, n: usize) -> PyResult<Instance> {
    Ok(Instance { inner: gen_jkn(k, n).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (n, edge_prob, tie_prob, seed = 0))]
fn random_instance(n: usize, edge_prob: f64, tie_prob: f64, seed: u64) -> PyResult<Instance> {
    Ok(Instance { inner: gen_random(n, edge_prob, tie_prob, seed).map_err(err)? })
}

#[pymodule]
fn masterlist_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Instance>()?;
    m.add_function(wrap_pyfunction!(four_cycles, m)?)?;
    m.add_function(wrap_pyfunction!(jkn, m)?)?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    Ok(())
}
