//! Preference systems: an undirected graph in which every vertex weakly
//! orders its neighbours.
//!
//! Vertices carry a string name externally and a dense [`VertexId`]
//! internally; ids are assigned in input order and are used for every
//! deterministic tie-break in the crate.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::prefdigraph::MasterList;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An unordered pair of distinct vertices, smaller id first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        debug_assert_ne!(a, b, "edges join distinct vertices");
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.0, self.1)
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    /// The endpoint that is not `v`, if `v` is an endpoint.
    pub fn other(self, v: VertexId) -> Option<VertexId> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }
}

/// A weak order over a finite set of vertices, most-preferred group first.
///
/// Members of a group are kept sorted by id so that equal orders compare
/// equal structurally.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct WeakOrder {
    groups: Vec<Vec<VertexId>>,
}

impl WeakOrder {
    /// Builds a weak order from groups. Empty groups are dropped; a vertex
    /// occurring twice is rejected.
    pub fn new(groups: Vec<Vec<VertexId>>) -> std::result::Result<Self, VertexId> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::with_capacity(groups.len());
        for mut g in groups {
            if g.is_empty() {
                continue;
            }
            for &v in &g {
                if !seen.insert(v) {
                    return Err(v);
                }
            }
            g.sort_unstable();
            out.push(g);
        }
        Ok(WeakOrder { groups: out })
    }

    /// A strict order from a list, most preferred first.
    pub fn strict<I: IntoIterator<Item = VertexId>>(list: I) -> Self {
        let groups: Vec<Vec<VertexId>> = list.into_iter().map(|v| vec![v]).collect();
        WeakOrder::new(groups).expect("strict list with repeated vertex")
    }

    pub fn groups(&self) -> &[Vec<VertexId>] {
        &self.groups
    }

    /// Number of ordered elements.
    pub fn len(&self) -> usize {
        self.groups.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn is_strict(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }

    /// Elements from most to least preferred (tied elements by id).
    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.groups.iter().flatten().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.groups.iter().any(|g| g.contains(&v))
    }

    /// Index of the group holding `v` (0 = most preferred).
    pub fn rank_of(&self, v: VertexId) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&v))
    }

    pub fn ground_set(&self) -> BTreeSet<VertexId> {
        self.iter().collect()
    }

    /// The restriction of this order to the elements accepted by `keep`.
    pub fn restrict<F: Fn(VertexId) -> bool>(&self, keep: F) -> WeakOrder {
        let groups = self
            .groups
            .iter()
            .map(|g| g.iter().copied().filter(|&v| keep(v)).collect::<Vec<_>>())
            .filter(|g| !g.is_empty())
            .collect();
        WeakOrder { groups }
    }

    fn rank_map(&self) -> HashMap<VertexId, usize> {
        let mut m = HashMap::with_capacity(self.len());
        for (r, g) in self.groups.iter().enumerate() {
            for &v in g {
                m.insert(v, r);
            }
        }
        m
    }
}

/// A swap `(a,b;v)`: exchange `a` and `b` in the preferences of `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Swap {
    pub a: VertexId,
    pub b: VertexId,
    pub v: VertexId,
}

impl Swap {
    pub fn new(a: VertexId, b: VertexId, v: VertexId) -> Self {
        Swap { a, b, v }
    }
}

/// Swap distance between orders or instances; infinite across different
/// ground sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceValue {
    Finite(u64),
    Infinity,
}

impl DistanceValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            DistanceValue::Finite(x) => Some(x),
            DistanceValue::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, DistanceValue::Infinity)
    }
}

impl Add for DistanceValue {
    type Output = DistanceValue;

    fn add(self, rhs: DistanceValue) -> DistanceValue {
        match (self, rhs) {
            (DistanceValue::Finite(a), DistanceValue::Finite(b)) => DistanceValue::Finite(a + b),
            _ => DistanceValue::Infinity,
        }
    }
}

impl PartialOrd for DistanceValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DistanceValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DistanceValue::Finite(a), DistanceValue::Finite(b)) => a.cmp(b),
            (DistanceValue::Finite(_), DistanceValue::Infinity) => Ordering::Less,
            (DistanceValue::Infinity, DistanceValue::Finite(_)) => Ordering::Greater,
            (DistanceValue::Infinity, DistanceValue::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for DistanceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistanceValue::Finite(x) => write!(f, "{x}"),
            DistanceValue::Infinity => f.write_str("inf"),
        }
    }
}

/// Swap distance of two weak orders: pairs ordered strictly in `u` but not
/// the same way in `w`, plus pairs tied in `u` but not in `w`.
pub fn swap_distance_orders(u: &WeakOrder, w: &WeakOrder) -> DistanceValue {
    if u.ground_set() != w.ground_set() {
        return DistanceValue::Infinity;
    }
    let ru = u.rank_map();
    let rw = w.rank_map();
    let elems: Vec<VertexId> = u.iter().collect();
    let mut count = 0u64;
    for (i, &a) in elems.iter().enumerate() {
        for &b in &elems[i + 1..] {
            let cu = ru[&a].cmp(&ru[&b]);
            let cw = rw[&a].cmp(&rw[&b]);
            if cu != cw {
                count += 1;
            }
        }
    }
    DistanceValue::Finite(count)
}

/// Characters that would clash with the text formats.
fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name.contains("--")
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '>' | '=' | '#' | ','))
}

/// A preference system: vertices with a weak order over their neighbours.
#[derive(Debug, Clone)]
pub struct PreferenceSystem {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    orders: Vec<WeakOrder>,
    ranks: Vec<HashMap<VertexId, usize>>,
}

impl PartialEq for PreferenceSystem {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.orders == other.orders
    }
}

impl Eq for PreferenceSystem {}

impl PreferenceSystem {
    /// Validates and builds an instance. `orders[i]` is the order of the
    /// vertex named `names[i]`.
    pub fn new(names: Vec<String>, orders: Vec<WeakOrder>) -> Result<Self> {
        if names.len() != orders.len() {
            return Err(Error::InvalidParams(format!(
                "{} names but {} preference lists",
                names.len(),
                orders.len()
            )));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidName(name.clone()));
            }
            if index.insert(name.clone(), VertexId(i)).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        let n = names.len();
        for (i, order) in orders.iter().enumerate() {
            for u in order.iter() {
                if u.0 >= n {
                    return Err(Error::UnknownVertex(format!("{u}")));
                }
                if u.0 == i {
                    return Err(Error::SelfPreference(names[i].clone()));
                }
            }
        }
        let ranks: Vec<HashMap<VertexId, usize>> = orders.iter().map(WeakOrder::rank_map).collect();
        for (i, order) in orders.iter().enumerate() {
            for u in order.iter() {
                if !ranks[u.0].contains_key(&VertexId(i)) {
                    return Err(Error::Asymmetric(names[i].clone(), names[u.0].clone()));
                }
            }
        }
        Ok(PreferenceSystem {
            names,
            index,
            orders,
            ranks,
        })
    }

    /// The empty instance.
    pub fn empty() -> Self {
        PreferenceSystem::new(Vec::new(), Vec::new()).expect("empty instance is valid")
    }

    /// Instance on the given graph whose preferences are the restrictions of
    /// `ml` to each neighbourhood.
    pub fn from_master_list(names: Vec<String>, edges: &[Edge], ml: &MasterList) -> Result<Self> {
        let n = names.len();
        let mut adj = vec![BTreeSet::new(); n];
        for e in edges {
            let (a, b) = e.endpoints();
            if a.0 >= n || b.0 >= n {
                return Err(Error::UnknownVertex(format!("{}", a.max(b))));
            }
            adj[a.0].insert(b);
            adj[b.0].insert(a);
        }
        let orders = adj
            .iter()
            .map(|nbrs| ml.order().restrict(|u| nbrs.contains(&u)))
            .collect();
        PreferenceSystem::new(names, orders)
    }

    /// Same graph, preferences induced by `ml`.
    pub fn with_master_list(&self, ml: &MasterList) -> Result<Self> {
        PreferenceSystem::from_master_list(self.names.clone(), &self.edges(), ml)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.names.len()).map(VertexId)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.0]
    }

    pub fn vertex(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Looks up a vertex by name, failing with `UnknownVertex`.
    pub fn require(&self, name: &str) -> Result<VertexId> {
        self.vertex(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn order(&self, v: VertexId) -> &WeakOrder {
        &self.orders[v.0]
    }

    pub fn orders(&self) -> &[WeakOrder] {
        &self.orders
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.orders[v.0].iter()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.orders[v.0].len()
    }

    /// Group index of `u` in the order of `v` (0 = most preferred).
    #[inline]
    pub fn rank(&self, v: VertexId, u: VertexId) -> Option<usize> {
        self.ranks[v.0].get(&u).copied()
    }

    /// Whether `v` strictly prefers `x` to `y`. Both must be neighbours.
    #[inline]
    pub fn prefers(&self, v: VertexId, x: VertexId, y: VertexId) -> bool {
        match (self.rank(v, x), self.rank(v, y)) {
            (Some(rx), Some(ry)) => rx < ry,
            _ => false,
        }
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a.0 < self.len() && self.ranks[a.0].contains_key(&b)
    }

    /// All edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for v in self.vertices() {
            for u in self.neighbors(v) {
                if v < u {
                    out.push(Edge::new(v, u));
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn edge_count(&self) -> usize {
        self.orders.iter().map(WeakOrder::len).sum::<usize>() / 2
    }

    pub fn is_strict(&self) -> bool {
        self.orders.iter().all(WeakOrder::is_strict)
    }

    /// Looks up an edge by endpoint names.
    pub fn edge_by_names(&self, a: &str, b: &str) -> Result<Edge> {
        let va = self.require(a)?;
        let vb = self.require(b)?;
        if va == vb || !self.has_edge(va, vb) {
            return Err(Error::UnknownEdge(a.to_string(), b.to_string()));
        }
        Ok(Edge::new(va, vb))
    }

    pub fn edge_names(&self, e: Edge) -> (&str, &str) {
        let (a, b) = e.endpoints();
        (self.name(a), self.name(b))
    }

    fn rebuild(&self, orders: Vec<WeakOrder>) -> Self {
        let ranks = orders.iter().map(WeakOrder::rank_map).collect();
        PreferenceSystem {
            names: self.names.clone(),
            index: self.index.clone(),
            orders,
            ranks,
        }
    }

    fn swap_names(&self, s: &Swap) -> (String, String, String) {
        let nm = |v: VertexId| {
            self.names
                .get(v.0)
                .cloned()
                .unwrap_or_else(|| format!("{v}"))
        };
        (nm(s.a), nm(s.b), nm(s.v))
    }

    /// Whether `s` can be applied: strict order at `s.v` with `a`, `b`
    /// adjacent in it.
    pub fn is_admissible(&self, s: &Swap) -> bool {
        if s.v.0 >= self.len() || s.a == s.b {
            return false;
        }
        let order = &self.orders[s.v.0];
        if !order.is_strict() {
            return false;
        }
        match (self.rank(s.v, s.a), self.rank(s.v, s.b)) {
            (Some(ra), Some(rb)) => ra.abs_diff(rb) == 1,
            _ => false,
        }
    }

    /// `I ◁ (a,b;v)`.
    pub fn apply_swap(&self, s: &Swap) -> Result<Self> {
        for v in [s.a, s.b, s.v] {
            if v.0 >= self.len() {
                return Err(Error::UnknownVertex(format!("{v}")));
            }
        }
        if !self.is_admissible(s) {
            let (a, b, v) = self.swap_names(s);
            return Err(Error::NotAdmissible { a, b, v });
        }
        let mut orders = self.orders.clone();
        let ra = self.rank(s.v, s.a).expect("checked");
        let rb = self.rank(s.v, s.b).expect("checked");
        orders[s.v.0].groups.swap(ra, rb);
        Ok(self.rebuild(orders))
    }

    /// Applies a multiset of swaps, always taking the first remaining swap
    /// that is currently admissible.
    pub fn apply_swaps(&self, swaps: &[Swap]) -> Result<Self> {
        if !self.is_strict() {
            return Err(Error::NotStrict);
        }
        let mut current = self.clone();
        let mut remaining: Vec<Swap> = swaps.to_vec();
        while !remaining.is_empty() {
            match remaining.iter().position(|s| current.is_admissible(s)) {
                Some(pos) => {
                    let s = remaining.remove(pos);
                    current = current.apply_swap(&s)?;
                }
                None => {
                    return Err(Error::StuckSwaps {
                        remaining: remaining.iter().map(|s| self.swap_names(s)).collect(),
                    })
                }
            }
        }
        Ok(current)
    }

    /// `I − S` for an edge set; the vertex set is unchanged.
    pub fn delete_edges(&self, edges: &[Edge]) -> Result<Self> {
        let mut removed: Vec<BTreeSet<VertexId>> = vec![BTreeSet::new(); self.len()];
        for &e in edges {
            let (a, b) = e.endpoints();
            if b.0 >= self.len() || !self.has_edge(a, b) {
                let nm = |v: VertexId| self.names.get(v.0).cloned().unwrap_or_else(|| format!("{v}"));
                return Err(Error::UnknownEdge(nm(a), nm(b)));
            }
            removed[a.0].insert(b);
            removed[b.0].insert(a);
        }
        let orders = self
            .orders
            .iter()
            .zip(&removed)
            .map(|(o, r)| if r.is_empty() { o.clone() } else { o.restrict(|u| !r.contains(&u)) })
            .collect();
        Ok(self.rebuild(orders))
    }

    /// Removes every edge incident to `vertices` but keeps the vertices (as
    /// isolated ones) so that ids stay valid.
    pub fn isolate_vertices(&self, vertices: &[VertexId]) -> Result<Self> {
        let mut gone = vec![false; self.len()];
        for &v in vertices {
            if v.0 >= self.len() {
                return Err(Error::UnknownVertex(format!("{v}")));
            }
            gone[v.0] = true;
        }
        let orders = self
            .orders
            .iter()
            .enumerate()
            .map(|(i, o)| {
                if gone[i] {
                    WeakOrder::default()
                } else {
                    o.restrict(|u| !gone[u.0])
                }
            })
            .collect();
        Ok(self.rebuild(orders))
    }

    /// `I − S` for a vertex set. Surviving vertices keep their relative order
    /// and are renumbered densely.
    pub fn delete_vertices(&self, vertices: &[VertexId]) -> Result<Self> {
        let mut gone = vec![false; self.len()];
        for &v in vertices {
            if v.0 >= self.len() {
                return Err(Error::UnknownVertex(format!("{v}")));
            }
            gone[v.0] = true;
        }
        let mut remap = vec![None; self.len()];
        let mut names = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            if !gone[i] {
                remap[i] = Some(VertexId(names.len()));
                names.push(name.clone());
            }
        }
        let orders = self
            .orders
            .iter()
            .enumerate()
            .filter(|(i, _)| !gone[*i])
            .map(|(_, o)| {
                let groups = o
                    .groups()
                    .iter()
                    .map(|g| g.iter().filter_map(|u| remap[u.0]).collect())
                    .collect();
                WeakOrder::new(groups).expect("restriction keeps groups disjoint")
            })
            .collect();
        PreferenceSystem::new(names, orders)
    }
}

/// `Δ(I, I')`: infinite unless both instances have the same vertex names;
/// otherwise the sum of per-vertex swap distances (vertices matched by name).
pub fn instance_swap_distance(a: &PreferenceSystem, b: &PreferenceSystem) -> DistanceValue {
    if a.len() != b.len() {
        return DistanceValue::Infinity;
    }
    let mut remap = Vec::with_capacity(a.len());
    for name in a.names() {
        match b.vertex(name) {
            Some(v) => remap.push(v),
            None => return DistanceValue::Infinity,
        }
    }
    let mut total = DistanceValue::Finite(0);
    for v in a.vertices() {
        let translated = WeakOrder {
            groups: a
                .order(v)
                .groups()
                .iter()
                .map(|g| {
                    let mut g: Vec<VertexId> = g.iter().map(|u| remap[u.0]).collect();
                    g.sort_unstable();
                    g
                })
                .collect(),
        };
        total = total + swap_distance_orders(&translated, b.order(remap[v.0]));
        if total.is_infinite() {
            break;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;

    fn ids(v: &[usize]) -> Vec<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    fn strict(v: &[usize]) -> WeakOrder {
        WeakOrder::strict(ids(v))
    }

    #[test]
    fn distance_identical_and_reversed() {
        let abc = strict(&[0, 1, 2]);
        assert_eq!(swap_distance_orders(&abc, &abc), DistanceValue::Finite(0));
        assert_eq!(swap_distance_orders(&abc, &strict(&[2, 1, 0])), DistanceValue::Finite(3));
    }

    #[test]
    fn distance_to_full_tie() {
        let abc = strict(&[0, 1, 2]);
        let tied = WeakOrder::new(vec![ids(&[0, 1, 2])]).unwrap();
        assert_eq!(swap_distance_orders(&abc, &tied), DistanceValue::Finite(3));
        assert_eq!(swap_distance_orders(&tied, &abc), DistanceValue::Finite(3));
    }

    #[test]
    fn distance_across_ground_sets_is_infinite() {
        assert_eq!(
            swap_distance_orders(&strict(&[0, 1]), &strict(&[0, 2])),
            DistanceValue::Infinity
        );
        let a = parse_instance("x :").unwrap();
        let b = parse_instance("y :").unwrap();
        assert_eq!(instance_swap_distance(&a, &b), DistanceValue::Infinity);
        assert_eq!(instance_swap_distance(&a, &a), DistanceValue::Finite(0));
    }

    #[test]
    fn swap_on_two_element_list() {
        let i = parse_instance("v : b > a\na : v\nb : v").unwrap();
        let s = Swap::new(i.require("a").unwrap(), i.require("b").unwrap(), i.require("v").unwrap());
        let j = i.apply_swap(&s).unwrap();
        let v = j.require("v").unwrap();
        assert_eq!(j.order(v), &WeakOrder::strict([j.require("a").unwrap(), j.require("b").unwrap()]));
    }

    #[test]
    fn swap_requires_adjacent_positions() {
        let i = parse_instance("v : c > b > a\na : v\nb : v\nc : v").unwrap();
        let [v, a, b, c] = ["v", "a", "b", "c"].map(|n| i.require(n).unwrap());
        assert!(matches!(
            i.apply_swap(&Swap::new(a, c, v)),
            Err(Error::NotAdmissible { .. })
        ));
        let j = i.apply_swap(&Swap::new(a, b, v)).unwrap();
        assert_eq!(j.order(v), &WeakOrder::strict([c, a, b]));
        assert_eq!(instance_swap_distance(&i, &j), DistanceValue::Finite(1));
    }

    #[test]
    fn swap_rejects_unknown_vertex_and_ties() {
        let i = parse_instance("v : a = b\na : v\nb : v").unwrap();
        let [v, a, b] = ["v", "a", "b"].map(|n| i.require(n).unwrap());
        assert!(matches!(i.apply_swap(&Swap::new(a, b, v)), Err(Error::NotAdmissible { .. })));
        assert!(matches!(
            i.apply_swap(&Swap::new(a, VertexId(9), v)),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn swap_sequences() {
        let i = parse_instance("v : c > b > a\na : v\nb : v\nc : v").unwrap();
        let [v, a, b, c] = ["v", "a", "b", "c"].map(|n| i.require(n).unwrap());
        assert_eq!(i.apply_swaps(&[]).unwrap(), i);
        // (a,c;v) only becomes admissible after (a,b;v).
        let j = i.apply_swaps(&[Swap::new(a, c, v), Swap::new(a, b, v)]).unwrap();
        assert_eq!(j.order(v), &WeakOrder::strict([a, c, b]));

        let k = parse_instance("v : b > a\na : v\nb : v").unwrap();
        let [v, a, b] = ["v", "a", "b"].map(|n| k.require(n).unwrap());
        let back = k.apply_swaps(&[Swap::new(a, b, v), Swap::new(a, b, v)]).unwrap();
        assert_eq!(back, k);
    }

    #[test]
    fn stuck_swaps_are_reported() {
        let i = parse_instance("v : c > b > a\na : v\nb : v\nc : v").unwrap();
        let [v, a, c] = ["v", "a", "c"].map(|n| i.require(n).unwrap());
        match i.apply_swaps(&[Swap::new(a, c, v)]) {
            Err(Error::StuckSwaps { remaining }) => {
                assert_eq!(remaining, vec![("a".into(), "c".into(), "v".into())])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_deletion() {
        let i = parse_instance("a : b\nb : a").unwrap();
        assert_eq!(i.delete_edges(&[]).unwrap(), i);
        let e = i.edge_by_names("a", "b").unwrap();
        let j = i.delete_edges(&[e]).unwrap();
        assert_eq!(j.len(), 2);
        assert_eq!(j.edge_count(), 0);
        assert!(matches!(j.delete_edges(&[e]), Err(Error::UnknownEdge(..))));
    }

    #[test]
    fn vertex_deletion() {
        let tri = parse_instance("a : b > c\nb : c > a\nc : a > b").unwrap();
        assert_eq!(tri.delete_vertices(&[]).unwrap(), tri);
        let j = tri.delete_vertices(&[tri.require("b").unwrap()]).unwrap();
        assert_eq!(j.names(), &["a".to_string(), "c".to_string()]);
        assert_eq!(j.edge_count(), 1);
        assert!(matches!(tri.delete_vertices(&[VertexId(7)]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn isolated_vertices_keep_ids() {
        let tri = parse_instance("a : b > c\nb : c > a\nc : a > b").unwrap();
        let j = tri.isolate_vertices(&[VertexId(1)]).unwrap();
        assert_eq!(j.len(), 3);
        assert_eq!(j.degree(VertexId(1)), 0);
        assert_eq!(j.edges(), vec![Edge::new(VertexId(0), VertexId(2))]);
    }

    #[test]
    fn symmetry_is_enforced() {
        let names = vec!["a".to_string(), "b".to_string()];
        let err = PreferenceSystem::new(names, vec![strict(&[1]), WeakOrder::default()]).unwrap_err();
        assert_eq!(err, Error::Asymmetric("a".into(), "b".into()));
    }

    #[test]
    fn rejects_bad_names() {
        for bad in ["", "a b", "x:y", "p>q", "u=v", "a--b", "h#"] {
            let r = PreferenceSystem::new(vec![bad.to_string()], vec![WeakOrder::default()]);
            assert!(matches!(r, Err(Error::InvalidName(_))), "{bad:?}");
        }
    }
}
