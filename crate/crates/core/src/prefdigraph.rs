//! The labelled preference digraph of an instance and master-list
//! recognition.
//!
//! For every vertex `v` and neighbours `a`, `b` with `v` preferring `b` to
//! `a` there is a strict arc `a → b` labelled `v`; tied neighbours give a
//! pair of tied arcs. An instance admits a master list iff no cycle of this
//! digraph contains a strict arc.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::cycles::{Arc, ArcGraph};
use crate::system::{PreferenceSystem, VertexId, WeakOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ArcKind {
    Strict,
    Tied,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabeledArc {
    pub from: VertexId,
    pub to: VertexId,
    pub label: VertexId,
    pub kind: ArcKind,
}

/// Position of an arc in [`PreferenceDigraph::arcs`].
pub type ArcId = usize;

/// Arcs are stored sorted by `(from, to, label)`; that order defines arc ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceDigraph {
    vertex_count: usize,
    arcs: Vec<LabeledArc>,
}

impl PreferenceDigraph {
    /// Builds a digraph from explicit arcs. Loops are rejected.
    pub fn from_arcs(vertex_count: usize, mut arcs: Vec<LabeledArc>) -> Option<Self> {
        if arcs
            .iter()
            .any(|a| a.from == a.to || a.from.0 >= vertex_count || a.to.0 >= vertex_count)
        {
            return None;
        }
        arcs.sort_by_key(|a| (a.from, a.to, a.label, a.kind));
        Some(PreferenceDigraph { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[LabeledArc] {
        &self.arcs
    }

    pub fn arc(&self, id: ArcId) -> &LabeledArc {
        &self.arcs[id]
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Copy without the given arcs (ids refer to this digraph).
    pub fn without(&self, removed: &[ArcId]) -> PreferenceDigraph {
        let mut keep = vec![true; self.arcs.len()];
        for &id in removed {
            keep[id] = false;
        }
        PreferenceDigraph {
            vertex_count: self.vertex_count,
            arcs: self
                .arcs
                .iter()
                .zip(keep)
                .filter_map(|(a, k)| k.then_some(*a))
                .collect(),
        }
    }

    /// Cycle engine view; strict arcs are the marked ones unless
    /// `all_marked`.
    pub(crate) fn arc_graph(&self, all_marked: bool) -> ArcGraph {
        ArcGraph::new(
            self.vertex_count,
            self.arcs
                .iter()
                .map(|a| Arc {
                    from: a.from.0,
                    to: a.to.0,
                    marked: all_marked || a.kind == ArcKind::Strict,
                })
                .collect(),
        )
    }
}

/// A weak order over all vertices of an instance, most preferred first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MasterList(WeakOrder);

impl MasterList {
    /// `None` unless `order` covers exactly the vertices `0..vertex_count`.
    pub fn new(order: WeakOrder, vertex_count: usize) -> Option<Self> {
        let ground = order.ground_set();
        let ok = ground.len() == vertex_count && ground.iter().all(|v| v.0 < vertex_count);
        ok.then_some(MasterList(order))
    }

    pub fn order(&self) -> &WeakOrder {
        &self.0
    }

    pub fn groups(&self) -> &[Vec<VertexId>] {
        self.0.groups()
    }

    pub fn is_strict(&self) -> bool {
        self.0.is_strict()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn build_digraph(i: &PreferenceSystem) -> PreferenceDigraph {
    let mut arcs = Vec::new();
    for v in i.vertices() {
        let groups = i.order(v).groups();
        for (r, better) in groups.iter().enumerate() {
            for (x_pos, &x) in better.iter().enumerate() {
                for &y in &better[x_pos + 1..] {
                    arcs.push(LabeledArc { from: x, to: y, label: v, kind: ArcKind::Tied });
                    arcs.push(LabeledArc { from: y, to: x, label: v, kind: ArcKind::Tied });
                }
                for worse in &groups[r + 1..] {
                    for &y in worse {
                        arcs.push(LabeledArc { from: y, to: x, label: v, kind: ArcKind::Strict });
                    }
                }
            }
        }
    }
    PreferenceDigraph::from_arcs(i.len(), arcs).expect("preference arcs never form loops")
}

/// A shortest cycle through at least one strict arc, as arc ids starting
/// with that strict arc.
pub fn find_strict_cycle(d: &PreferenceDigraph) -> Option<Vec<ArcId>> {
    let g = d.arc_graph(false);
    g.shortest_marked_cycle(&vec![true; d.len()])
}

/// Groups of vertices joined by tied arcs.
fn tied_groups(d: &PreferenceDigraph) -> Vec<usize> {
    let n = d.vertex_count();
    let alive: Vec<bool> = d.arcs().iter().map(|a| a.kind == ArcKind::Tied).collect();
    d.arc_graph(false).scc_ids(&alive)
        .into_iter()
        .take(n)
        .collect()
}

/// Orders the tied groups so that every strict arc points to an earlier
/// group; among available groups the one with the smallest vertex id goes
/// first. `None` if some strict arc stays inside a group or the groups
/// cannot be ordered.
fn order_groups(d: &PreferenceDigraph, comp: &[usize]) -> Option<MasterList> {
    let n = d.vertex_count();
    let k = comp.iter().copied().max().map_or(0, |m| m + 1);
    let mut members = vec![Vec::new(); k];
    for v in 0..n {
        members[comp[v]].push(VertexId(v));
    }
    // Reverse strict arcs: group of `to` (more preferred) before group of `from`.
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for a in d.arcs().iter().filter(|a| a.kind == ArcKind::Strict) {
        let (cf, ct) = (comp[a.from.0], comp[a.to.0]);
        if cf == ct {
            return None;
        }
        succ[ct].push(cf);
        indeg[cf] += 1;
    }
    let key = |c: usize| members[c][0];
    let mut heap: BinaryHeap<Reverse<(VertexId, usize)>> = (0..k)
        .filter(|&c| indeg[c] == 0)
        .map(|c| Reverse((key(c), c)))
        .collect();
    let mut groups = Vec::with_capacity(k);
    while let Some(Reverse((_, c))) = heap.pop() {
        groups.push(members[c].clone());
        for &s in &succ[c] {
            indeg[s] -= 1;
            if indeg[s] == 0 {
                heap.push(Reverse((key(s), s)));
            }
        }
    }
    if groups.len() != k {
        return None;
    }
    MasterList::new(WeakOrder::new(groups).ok()?, n)
}

/// A master list for `i`, or `None` if none exists.
///
/// Vertices joined by tied arcs share a group; the groups are then ordered
/// topologically. The result is the coarsest master list this construction
/// yields, and it is strict for strict instances.
pub fn admits_master_list(i: &PreferenceSystem) -> Option<MasterList> {
    let d = build_digraph(i);
    if find_strict_cycle(&d).is_some() {
        return None;
    }
    let ml = order_groups(&d, &tied_groups(&d));
    debug_assert!(ml.is_some(), "no strict cycle implies an ordering exists");
    ml
}

/// Whether every vertex's order is the restriction of `ml` to its
/// neighbourhood.
pub fn is_consistent(i: &PreferenceSystem, ml: &MasterList) -> bool {
    if ml.len() != i.len() || ml.order().iter().any(|v| v.0 >= i.len()) {
        return false;
    }
    i.vertices().all(|v| {
        let order = i.order(v);
        &ml.order().restrict(|u| i.has_edge(v, u)) == order
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{format_master_list, parse_instance};
    use crate::generators::gen_four_cycles;

    #[test]
    fn single_edge_has_no_arcs() {
        let i = parse_instance("a : b\nb : a").unwrap();
        assert!(build_digraph(&i).is_empty());
        assert!(admits_master_list(&i).is_some());
    }

    #[test]
    fn four_cycle_arcs() {
        let i = gen_four_cycles(1);
        let d = build_digraph(&i);
        let mut named: Vec<(String, String, String)> = d
            .arcs()
            .iter()
            .map(|a| {
                assert_eq!(a.kind, ArcKind::Strict);
                (i.name(a.from).into(), i.name(a.to).into(), i.name(a.label).into())
            })
            .collect();
        named.sort_by(|x, y| x.2.cmp(&y.2));
        let expect = [("4", "2", "1"), ("1", "3", "2"), ("2", "4", "3"), ("3", "1", "4")];
        let expect: Vec<(String, String, String)> = expect
            .iter()
            .map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string()))
            .collect();
        assert_eq!(named, expect);
    }

    #[test]
    fn four_cycle_strict_cycle_is_a_two_cycle() {
        let i = gen_four_cycles(1);
        let d = build_digraph(&i);
        let cyc = find_strict_cycle(&d).unwrap();
        assert_eq!(cyc.len(), 2);
        let mut ends: Vec<(String, String)> = cyc
            .iter()
            .map(|&id| (i.name(d.arc(id).from).to_string(), i.name(d.arc(id).to).to_string()))
            .collect();
        ends.sort();
        assert_eq!(ends, vec![("1".into(), "3".into()), ("3".into(), "1".into())]);
        assert!(admits_master_list(&i).is_none());
    }

    #[test]
    fn tied_pair() {
        let i = parse_instance("v : a = b\na : v\nb : v").unwrap();
        let d = build_digraph(&i);
        assert_eq!(d.len(), 2);
        assert!(d.arcs().iter().all(|a| a.kind == ArcKind::Tied));
        assert!(find_strict_cycle(&d).is_none());
        let ml = admits_master_list(&i).unwrap();
        assert!(is_consistent(&i, &ml));
        assert_eq!(format_master_list(&i, &ml), "v > a = b");
    }

    #[test]
    fn empty_and_trivial() {
        let e = PreferenceSystem::empty();
        assert_eq!(admits_master_list(&e).unwrap().len(), 0);
        let one = parse_instance("x :").unwrap();
        let ml = admits_master_list(&one).unwrap();
        assert!(is_consistent(&one, &ml));
    }

    #[test]
    fn edgeless_instance_is_consistent_with_anything() {
        let i = parse_instance("a :\nb :\nc :").unwrap();
        let ml = MasterList::new(WeakOrder::strict([VertexId(2), VertexId(0), VertexId(1)]), 3).unwrap();
        assert!(is_consistent(&i, &ml));
    }

    #[test]
    fn four_cycle_is_inconsistent_with_every_master_list() {
        let i = gen_four_cycles(1);
        for ml in crate::oracle::all_weak_orders(4) {
            let ml = MasterList::new(ml, 4).unwrap();
            assert!(!is_consistent(&i, &ml));
        }
    }

    #[test]
    fn master_list_tie_break_prefers_small_ids() {
        let i = parse_instance("a :\nb : c\nc : b").unwrap();
        let ml = admits_master_list(&i).unwrap();
        assert_eq!(format_master_list(&i, &ml), "a > b > c");
    }

    #[test]
    fn weak_instance_with_tie_conflict() {
        // v ties a and b, w strictly orders them: the tied pair plus the
        // strict arc form a strict 2-cycle.
        let i = parse_instance("v : a = b\nw : a > b\na : v > w\nb : v > w").unwrap();
        assert!(admits_master_list(&i).is_none());
    }
}
