//! Matchings, blocking edges, and enumeration of matchings with a given
//! blocking set via an edge or vertex modulator.
//!
//! Removing a modulator leaves a master-list instance, whose stable
//! matching is unique and found greedily. The enumerators guess how a
//! matching meets the modulator and complete each guess with that unique
//! stable matching.

use std::collections::BTreeSet;

use itertools::Itertools;
use rayon::prelude::*;

use crate::distances::{delta_edge_2approx, delta_vert_exact};
use crate::error::{Error, Result};
use crate::prefdigraph::{admits_master_list, is_consistent, MasterList};
use crate::system::{Edge, PreferenceSystem, VertexId};

/// A set of pairwise disjoint edges, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        edges.dedup();
        let mut seen = BTreeSet::new();
        for e in &edges {
            let (a, b) = e.endpoints();
            if !seen.insert(a) || !seen.insert(b) {
                return Err(Error::InvalidParams(format!("vertex {} is matched twice", if seen.contains(&a) { a } else { b })));
            }
        }
        Ok(Matching { edges })
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Partner of every vertex `0..n`.
    pub fn mates(&self, n: usize) -> Vec<Option<VertexId>> {
        let mut mate = vec![None; n];
        for e in &self.edges {
            let (a, b) = e.endpoints();
            mate[a.0] = Some(b);
            mate[b.0] = Some(a);
        }
        mate
    }

    /// Whether every edge exists in `i`.
    pub fn is_valid_in(&self, i: &PreferenceSystem) -> bool {
        self.edges.iter().all(|e| {
            let (a, b) = e.endpoints();
            b.0 < i.len() && i.has_edge(a, b)
        })
    }

    fn union(&self, other: &Matching) -> Matching {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        edges.sort_unstable();
        Matching { edges }
    }
}

/// Sorted set of edges.
pub type BlockingSet = Vec<Edge>;

/// `v` strictly prefers `u` to its partner (or is unmatched).
fn would_switch(i: &PreferenceSystem, mate: &[Option<VertexId>], v: VertexId, u: VertexId) -> bool {
    match mate[v.0] {
        None => true,
        Some(m) => i.prefers(v, u, m),
    }
}

/// Edges outside `m` whose endpoints both strictly prefer each other to
/// their partners.
pub fn blocking_edges(i: &PreferenceSystem, m: &Matching) -> BlockingSet {
    let mate = m.mates(i.len());
    i.edges()
        .into_iter()
        .filter(|e| {
            let (a, b) = e.endpoints();
            mate[a.0] != Some(b) && would_switch(i, &mate, a, b) && would_switch(i, &mate, b, a)
        })
        .collect()
}

pub fn is_stable(i: &PreferenceSystem, m: &Matching) -> bool {
    blocking_edges(i, m).is_empty()
}

/// The unique stable matching of a strict instance consistent with a strict
/// master list: scanning the list, each free vertex takes its favourite
/// free neighbour.
pub fn unique_stable_ml(i: &PreferenceSystem, ml: &MasterList) -> Result<Matching> {
    if !i.is_strict() || !ml.is_strict() || !is_consistent(i, ml) {
        return Err(Error::NotConsistent);
    }
    Ok(greedy(i, ml))
}

fn greedy(i: &PreferenceSystem, ml: &MasterList) -> Matching {
    let mut matched = vec![false; i.len()];
    let mut edges = Vec::new();
    for v in ml.order().iter() {
        if matched[v.0] {
            continue;
        }
        if let Some(u) = i.order(v).iter().find(|u| !matched[u.0]) {
            matched[v.0] = true;
            matched[u.0] = true;
            edges.push(Edge::new(v, u));
        }
    }
    Matching::new(edges).expect("greedy output is a matching")
}

/// Unique stable matching of a strict instance known to admit a master list.
fn stable_of_ml_instance(i: &PreferenceSystem) -> Option<Matching> {
    admits_master_list(i).map(|ml| greedy(i, &ml))
}

/// Every matching using only the given edges, including the empty one.
pub(crate) fn matchings_of(edges: &[Edge]) -> Vec<Vec<Edge>> {
    fn rec(edges: &[Edge], used: &mut BTreeSet<VertexId>, cur: &mut Vec<Edge>, out: &mut Vec<Vec<Edge>>) {
        let Some((&e, rest)) = edges.split_first() else {
            out.push(cur.clone());
            return;
        };
        rec(rest, used, cur, out);
        let (a, b) = e.endpoints();
        if !used.contains(&a) && !used.contains(&b) {
            used.insert(a);
            used.insert(b);
            cur.push(e);
            rec(rest, used, cur, out);
            cur.pop();
            used.remove(&a);
            used.remove(&b);
        }
    }
    let mut out = Vec::new();
    rec(edges, &mut BTreeSet::new(), &mut Vec::new(), &mut out);
    out
}

/// Every matching of `i`.
pub fn all_matchings(i: &PreferenceSystem) -> Vec<Matching> {
    let mut all: Vec<Matching> = matchings_of(&i.edges())
        .into_iter()
        .map(|edges| Matching::new(edges).expect("disjoint"))
        .collect();
    all.sort();
    all
}

fn check_modulated(i: &PreferenceSystem, rest: &PreferenceSystem, b: &[Edge]) -> Result<BlockingSet> {
    if !i.is_strict() {
        return Err(Error::NotStrict);
    }
    if admits_master_list(rest).is_none() {
        return Err(Error::ModulatorInvalid);
    }
    let mut b = b.to_vec();
    b.sort_unstable();
    b.dedup();
    for e in &b {
        let (x, y) = e.endpoints();
        if y.0 >= i.len() || !i.has_edge(x, y) {
            return Err(Error::UnknownEdge(x.to_string(), y.to_string()));
        }
    }
    Ok(b)
}

/// Completes each guess `m_s` with the unique stable matching of
/// `base` minus the vertices of `m_s` (and `extra`), keeping the results
/// whose blocking set is exactly `b`.
fn complete_guesses(
    i: &PreferenceSystem,
    base: &PreferenceSystem,
    guesses: Vec<Vec<Edge>>,
    extra: &[VertexId],
    b: &[Edge],
) -> Vec<Matching> {
    let found: Vec<Matching> = guesses
        .into_par_iter()
        .filter_map(|m_s| {
            let mut gone: Vec<VertexId> = extra.to_vec();
            for e in &m_s {
                let (x, y) = e.endpoints();
                gone.extend([x, y]);
            }
            let rest = base.isolate_vertices(&gone).expect("vertices exist");
            let m_rest = stable_of_ml_instance(&rest).expect("sub-instance of a master-list instance");
            let m = Matching::new(m_s).ok()?.union(&m_rest);
            (blocking_edges(i, &m) == b).then_some(m)
        })
        .collect();
    found.into_iter().sorted().dedup().collect()
}

/// All matchings `M` with `bp(M) = b`, given edges `s` whose deletion leaves
/// a master-list instance. At most `2^|s|` results.
pub fn enum_bp_edge_modulator(i: &PreferenceSystem, b: &[Edge], s: &[Edge]) -> Result<Vec<Matching>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let rest = i.delete_edges(&s)?;
    let b = check_modulated(i, &rest, b)?;
    let removed: Vec<Edge> = s.iter().chain(&b).copied().sorted().dedup().collect();
    let base = i.delete_edges(&removed)?;
    let usable: Vec<Edge> = s.iter().copied().filter(|e| !b.contains(e)).collect();
    Ok(complete_guesses(i, &base, matchings_of(&usable), &[], &b))
}

/// All matchings `M` with `bp(M) = b`, given vertices `s` whose deletion
/// leaves a master-list instance. At most `|V|^|s|` results.
pub fn enum_bp_vertex_modulator(i: &PreferenceSystem, b: &[Edge], s: &[VertexId]) -> Result<Vec<Matching>> {
    let mut s = s.to_vec();
    s.sort_unstable();
    s.dedup();
    let rest = i.delete_vertices(&s)?;
    let b = check_modulated(i, &rest, b)?;
    let base = i.delete_edges(&b)?;
    let incident: Vec<Edge> = base
        .edges()
        .into_iter()
        .filter(|e| s.iter().any(|&v| e.contains(v)))
        .collect();
    Ok(complete_guesses(i, &base, matchings_of(&incident), &s, &b))
}

/// Modulator used by [`enum_stable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Modulator {
    Edges(Vec<Edge>),
    Vertices(Vec<VertexId>),
}

impl Modulator {
    /// Upper bound on the number of guesses the enumerator will make.
    pub fn guess_bound(&self, i: &PreferenceSystem) -> f64 {
        match self {
            Modulator::Edges(s) => 2f64.powi(s.len() as i32),
            Modulator::Vertices(s) => s.iter().map(|&v| (i.degree(v) + 1) as f64).product(),
        }
    }
}

/// Vertex count up to which [`find_modulator`] also tries an exact vertex
/// modulator.
pub const EXACT_VERTEX_LIMIT: usize = 14;

/// A modulator with a small guess bound: the edge 2-approximation, or an
/// exact vertex modulator on small instances when that is cheaper.
pub fn find_modulator(i: &PreferenceSystem) -> Modulator {
    let edges = delta_edge_2approx(i, i.edge_count())
        .map(|w| w.edges)
        .unwrap_or_else(|| i.edges());
    let by_edges = Modulator::Edges(edges);
    if i.len() > EXACT_VERTEX_LIMIT {
        return by_edges;
    }
    match delta_vert_exact(i, i.len()) {
        Some(w) => {
            let by_vertices = Modulator::Vertices(w.vertices);
            if by_vertices.guess_bound(i) < by_edges.guess_bound(i) {
                by_vertices
            } else {
                by_edges
            }
        }
        None => by_edges,
    }
}

pub fn enum_with_modulator(i: &PreferenceSystem, b: &[Edge], m: &Modulator) -> Result<Vec<Matching>> {
    match m {
        Modulator::Edges(s) => enum_bp_edge_modulator(i, b, s),
        Modulator::Vertices(s) => enum_bp_vertex_modulator(i, b, s),
    }
}

/// All stable matchings of a strict instance.
pub fn enum_stable(i: &PreferenceSystem) -> Result<Vec<Matching>> {
    if !i.is_strict() {
        return Err(Error::NotStrict);
    }
    enum_with_modulator(i, &[], &find_modulator(i))
}

/// Default edge cap for [`brute_force_stable`].
pub const BRUTE_FORCE_EDGE_CAP: usize = 40;

/// All stable matchings by checking every matching.
pub fn brute_force_stable(i: &PreferenceSystem) -> Result<Vec<Matching>> {
    brute_force_stable_capped(i, BRUTE_FORCE_EDGE_CAP)
}

pub fn brute_force_stable_capped(i: &PreferenceSystem, cap: usize) -> Result<Vec<Matching>> {
    if !i.is_strict() {
        return Err(Error::NotStrict);
    }
    crate::oracle::brute_force_with_blocking(i, &[], cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    /// Sum over matched vertices of the partner's rank (1 = first choice).
    Egalitarian,
    Cardinality,
}

impl Objective {
    pub fn evaluate(self, i: &PreferenceSystem, m: &Matching) -> i64 {
        match self {
            Objective::Cardinality => m.len() as i64,
            Objective::Egalitarian => m
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = e.endpoints();
                    let r = |v, u| i.rank(v, u).expect("matched along an edge") as i64 + 1;
                    r(a, b) + r(b, a)
                })
                .sum(),
        }
    }
}

/// The stable matching optimising `f`; ties go to the first in canonical
/// order. `None` if there is no stable matching.
pub fn optimize_over_stable_by<F>(i: &PreferenceSystem, f: F, dir: Direction) -> Result<Option<(Matching, i64)>>
where
    F: Fn(&Matching) -> i64,
{
    let mut best: Option<(Matching, i64)> = None;
    for m in enum_stable(i)? {
        let val = f(&m);
        let better = match &best {
            None => true,
            Some((_, b)) => match dir {
                Direction::Min => val < *b,
                Direction::Max => val > *b,
            },
        };
        if better {
            best = Some((m, val));
        }
    }
    Ok(best)
}

pub fn optimize_over_stable(i: &PreferenceSystem, objective: Objective, dir: Direction) -> Result<Option<(Matching, i64)>> {
    optimize_over_stable_by(i, |m| objective.evaluate(i, m), dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;
    use crate::generators::{gen_four_cycles, gen_jkn};

    fn edge(i: &PreferenceSystem, a: &str, b: &str) -> Edge {
        i.edge_by_names(a, b).unwrap()
    }

    #[test]
    fn matching_rejects_shared_vertices() {
        let i = parse_instance("a : b > c\nb : a\nc : a").unwrap();
        assert!(Matching::new(vec![edge(&i, "a", "b"), edge(&i, "a", "c")]).is_err());
    }

    #[test]
    fn blocking_on_single_edge() {
        let i = parse_instance("a : b\nb : a").unwrap();
        let e = edge(&i, "a", "b");
        assert!(blocking_edges(&i, &Matching::new(vec![e]).unwrap()).is_empty());
        assert_eq!(blocking_edges(&i, &Matching::empty()), vec![e]);
    }

    #[test]
    fn four_cycle_blocking_and_stable() {
        let i = gen_four_cycles(1);
        let m = Matching::new(vec![edge(&i, "1", "2"), edge(&i, "3", "4")]).unwrap();
        assert!(blocking_edges(&i, &m).is_empty());
        assert_eq!(brute_force_stable(&i).unwrap().len(), 2);
        let s = vec![edge(&i, "1", "2")];
        assert_eq!(enum_bp_edge_modulator(&i, &[], &s).unwrap(), brute_force_stable(&i).unwrap());
    }

    #[test]
    fn greedy_on_master_list_triangle() {
        let i = parse_instance("a : b > c\nb : a > c\nc : a > b").unwrap();
        let ml = admits_master_list(&i).unwrap();
        let m = unique_stable_ml(&i, &ml).unwrap();
        assert_eq!(m.edges(), &[edge(&i, "a", "b")]);
        assert_eq!(brute_force_stable(&i).unwrap(), vec![m]);
        let empty = parse_instance("x :\ny :").unwrap();
        let ml = admits_master_list(&empty).unwrap();
        assert!(unique_stable_ml(&empty, &ml).unwrap().is_empty());
        let bad = gen_four_cycles(1);
        let ml = crate::prefdigraph::MasterList::new(crate::system::WeakOrder::strict((0..4).map(VertexId)), 4).unwrap();
        assert_eq!(unique_stable_ml(&bad, &ml), Err(Error::NotConsistent));
    }

    #[test]
    fn cyclic_triangle_has_no_stable_matching() {
        let i = parse_instance("a : b > c\nb : c > a\nc : a > b").unwrap();
        assert!(brute_force_stable(&i).unwrap().is_empty());
        assert!(enum_stable(&i).unwrap().is_empty());
        assert!(optimize_over_stable(&i, Objective::Cardinality, Direction::Max).unwrap().is_none());
    }

    #[test]
    fn enumerator_edge_cases() {
        let i = parse_instance("a : b\nb : a").unwrap();
        let e = edge(&i, "a", "b");
        assert_eq!(enum_bp_edge_modulator(&i, &[e], &[]).unwrap(), vec![Matching::empty()]);
        assert_eq!(enum_stable(&i).unwrap(), vec![Matching::new(vec![e]).unwrap()]);
        let c = gen_four_cycles(1);
        assert_eq!(enum_bp_edge_modulator(&c, &[], &[]), Err(Error::ModulatorInvalid));
        let weak = parse_instance("v : a = b\na : v\nb : v").unwrap();
        assert_eq!(enum_bp_edge_modulator(&weak, &[], &[]), Err(Error::NotStrict));
        assert_eq!(brute_force_stable(&weak), Err(Error::NotStrict));
    }

    #[test]
    fn tight_families() {
        let i = gen_four_cycles(3);
        let s: Vec<Edge> = ["1", "5", "9"]
            .iter()
            .map(|&a| {
                let v = i.require(a).unwrap();
                Edge::new(v, VertexId(v.0 + 1))
            })
            .collect();
        assert_eq!(enum_bp_edge_modulator(&i, &[], &s).unwrap().len(), 8);
        let j = gen_jkn(1, 2).unwrap();
        let s1 = vec![j.require("s1").unwrap()];
        assert_eq!(enum_bp_vertex_modulator(&j, &[], &s1).unwrap().len(), 2);
        let j = gen_jkn(3, 5).unwrap();
        let s: Vec<VertexId> = ["s1", "s2", "s3"].iter().map(|n| j.require(n).unwrap()).collect();
        let found = enum_bp_vertex_modulator(&j, &[], &s).unwrap();
        assert_eq!(found.len(), 10);
        assert_eq!(found, brute_force_stable(&j).unwrap());
    }

    #[test]
    fn egalitarian_on_four_cycle() {
        let i = gen_four_cycles(1);
        let (m, cost) = optimize_over_stable(&i, Objective::Egalitarian, Direction::Min).unwrap().unwrap();
        assert_eq!(cost, 6);
        assert_eq!(m, brute_force_stable(&i).unwrap()[0]);
        let (_, size) = optimize_over_stable(&i, Objective::Cardinality, Direction::Max).unwrap().unwrap();
        assert_eq!(size, 2);
    }
}
