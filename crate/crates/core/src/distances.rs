//! Distances from the master-list family: by swaps, edge deletions and
//! vertex deletions, each with a witness that can be checked independently.
//!
//! Swap distance goes through the preference digraph (a feedback arc set in
//! the strict case, a set hitting all strict cycles otherwise). Edge and
//! vertex distances are found by exhaustive search in increasing size. The
//! edge distance also has a factor-2 approximation through an auxiliary
//! digraph in which every edge endpoint is split into an in-copy and an
//! out-copy.

use itertools::Itertools;
use rayon::prelude::*;

use crate::cycles::{Arc, ArcGraph};
use crate::fas::{self, min_fas, min_strict_hitting, Problem, Target};
use crate::prefdigraph::{admits_master_list, build_digraph, ArcKind, MasterList, PreferenceDigraph};
use crate::system::{instance_swap_distance, DistanceValue, Edge, PreferenceSystem, Swap, VertexId, WeakOrder};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapWitness {
    pub value: u64,
    /// Swaps turning the input into `witness_instance`; strict inputs only.
    pub strict_swaps: Option<Vec<Swap>>,
    pub witness_instance: PreferenceSystem,
    /// Distance from the input to `witness_instance`.
    pub witness_distance: DistanceValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWitness {
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexWitness {
    pub vertices: Vec<VertexId>,
}

/// Drops arcs from a feedback arc set while the rest still is one.
fn minimalize(d: &PreferenceDigraph, mut set: Vec<usize>) -> Vec<usize> {
    let mut k = 0;
    while k < set.len() {
        let mut rest = set.clone();
        rest.remove(k);
        if fas::is_acyclic(&d.without(&rest)) {
            set = rest;
        } else {
            k += 1;
        }
    }
    set
}

/// Reverses the arcs of `set` one admissible swap at a time, always taking
/// the smallest `(label, from, to)` arc whose endpoints are adjacent in the
/// label's current order.
fn arcs_to_swaps(i: &PreferenceSystem, d: &PreferenceDigraph, set: &[usize]) -> (Vec<Swap>, PreferenceSystem) {
    let mut pending: Vec<usize> = set.to_vec();
    pending.sort_by_key(|&id| {
        let a = d.arc(id);
        (a.label, a.from, a.to)
    });
    let mut cur = i.clone();
    let mut swaps = Vec::with_capacity(pending.len());
    while !pending.is_empty() {
        let pos = pending
            .iter()
            .position(|&id| {
                let a = d.arc(id);
                cur.is_admissible(&Swap::new(a.from, a.to, a.label))
            })
            .expect("a minimal feedback arc set always has an admissible arc");
        let a = d.arc(pending.remove(pos));
        let s = Swap::new(a.from, a.to, a.label);
        cur = cur.apply_swap(&s).expect("checked admissible");
        swaps.push(s);
    }
    (swaps, cur)
}

/// Master list read off a digraph with no strict cycle: incomparable pairs
/// are tied (adding tied arcs one pair at a time) and `a` ranks below `b`
/// when a strict path leads from `a` to `b`.
fn master_list_from_strict_paths(n: usize, mut arcs: Vec<Arc>) -> MasterList {
    let strict_reach = |arcs: &[Arc]| -> Vec<Vec<bool>> {
        let g = ArcGraph::new(n, arcs.to_vec());
        let reach = g.reachability(&vec![true; arcs.len()]);
        let mut sr = vec![vec![false; n]; n];
        for a in arcs.iter().filter(|a| a.marked) {
            for x in 0..n {
                if reach[x][a.from] {
                    for y in 0..n {
                        if reach[a.to][y] {
                            sr[x][y] = true;
                        }
                    }
                }
            }
        }
        sr
    };
    let mut tied = vec![vec![false; n]; n];
    let mut sr = strict_reach(&arcs);
    'outer: loop {
        for a in 0..n {
            for b in a + 1..n {
                if !sr[a][b] && !sr[b][a] && !tied[a][b] {
                    tied[a][b] = true;
                    arcs.push(Arc { from: a, to: b, marked: false });
                    arcs.push(Arc { from: b, to: a, marked: false });
                    sr = strict_reach(&arcs);
                    continue 'outer;
                }
            }
        }
        break;
    }
    // More vertices below means more preferred; equal counts share a group.
    let below: Vec<usize> = (0..n).map(|v| (0..n).filter(|&x| sr[x][v]).count()).collect();
    let groups: Vec<Vec<VertexId>> = (0..n)
        .sorted_by_key(|&v| (std::cmp::Reverse(below[v]), v))
        .chunk_by(|&v| below[v])
        .into_iter()
        .map(|(_, g)| g.map(VertexId).collect())
        .collect();
    MasterList::new(WeakOrder::new(groups).expect("disjoint"), n).expect("covers all vertices")
}

/// Minimum swap distance to a master-list instance, if at most `budget`.
pub fn delta_swap(i: &PreferenceSystem, budget: u64) -> Option<SwapWitness> {
    let d = build_digraph(i);
    let budget = usize::try_from(budget).unwrap_or(usize::MAX).min(d.len());
    if i.is_strict() {
        let set = minimalize(&d, min_fas(&d, budget)?);
        let (swaps, witness) = arcs_to_swaps(i, &d, &set);
        debug_assert!(admits_master_list(&witness).is_some());
        return Some(SwapWitness {
            value: swaps.len() as u64,
            witness_distance: instance_swap_distance(i, &witness),
            strict_swaps: Some(swaps),
            witness_instance: witness,
        });
    }
    let hit = min_strict_hitting(&d, budget)?;
    let rest = d.without(&hit);
    let arcs = rest
        .arcs()
        .iter()
        .map(|a| Arc {
            from: a.from.0,
            to: a.to.0,
            marked: a.kind == ArcKind::Strict,
        })
        .collect();
    let ml = master_list_from_strict_paths(i.len(), arcs);
    let witness = i.with_master_list(&ml).expect("same graph");
    Some(SwapWitness {
        value: hit.len() as u64,
        strict_swaps: None,
        witness_distance: instance_swap_distance(i, &witness),
        witness_instance: witness,
    })
}

/// Candidate subsets are checked in chunks; inside a chunk the first
/// success in iteration order wins, so the result does not depend on the
/// thread count.
const CHUNK: usize = 2048;

fn first_subset<T, F>(items: &[T], k: usize, ok: F) -> Option<Vec<T>>
where
    T: Copy + Send + Sync,
    F: Fn(&[T]) -> bool + Sync,
{
    let mut combos = items.iter().copied().combinations(k);
    loop {
        let chunk: Vec<Vec<T>> = combos.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return None;
        }
        if let Some(found) = chunk.into_par_iter().find_first(|s| ok(s)) {
            return Some(found);
        }
    }
}

/// Smallest edge set (lexicographically first among those) whose deletion
/// leaves a master-list instance, if one of size at most `budget` exists.
pub fn delta_edge_exact(i: &PreferenceSystem, budget: usize) -> Option<EdgeWitness> {
    let edges = i.edges();
    (0..=budget.min(edges.len())).find_map(|k| {
        first_subset(&edges, k, |s| {
            admits_master_list(&i.delete_edges(s).expect("existing edges")).is_some()
        })
        .map(|edges| EdgeWitness { edges })
    })
}

/// Smallest vertex set (lexicographically first among those) whose deletion
/// leaves a master-list instance, if one of size at most `budget` exists.
pub fn delta_vert_exact(i: &PreferenceSystem, budget: usize) -> Option<VertexWitness> {
    let vertices: Vec<VertexId> = i.vertices().collect();
    (0..=budget.min(vertices.len())).find_map(|k| {
        first_subset(&vertices, k, |s| {
            admits_master_list(&i.isolate_vertices(s).expect("existing vertices")).is_some()
        })
        .map(|vertices| VertexWitness { vertices })
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxVertex {
    Original(VertexId),
    /// In-copy of `a` at `v`.
    Minus { a: VertexId, v: VertexId },
    /// Out-copy of `a` at `v`.
    Plus { a: VertexId, v: VertexId },
    /// A tied group of `v`, by position in its order.
    Tie { v: VertexId, group: usize },
    /// `v` prefers `b` to `a`.
    Pair { a: VertexId, b: VertexId, v: VertexId },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AuxArcKind {
    Tie,
    Incidence,
    Pair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AuxArc {
    pub from: usize,
    pub to: usize,
    pub kind: AuxArcKind,
}

/// The split digraph: a path `a → a⁺(v) → … → b⁻(v) → b` exists exactly when
/// the preference digraph has an arc from `a` to `b` labelled `v`. Cycles
/// through a `Pair` vertex are the relevant ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryDigraph {
    pub vertices: Vec<AuxVertex>,
    pub arcs: Vec<AuxArc>,
}

impl AuxiliaryDigraph {
    pub fn count(&self, pred: impl Fn(&AuxVertex) -> bool) -> usize {
        self.vertices.iter().filter(|v| pred(v)).count()
    }

    /// The edge behind an incidence arc.
    fn edge_of(&self, arc: &AuxArc) -> Option<Edge> {
        if arc.kind != AuxArcKind::Incidence {
            return None;
        }
        match (self.vertices[arc.from], self.vertices[arc.to]) {
            (AuxVertex::Minus { a, v }, _) | (_, AuxVertex::Plus { a, v }) => Some(Edge::new(a, v)),
            _ => None,
        }
    }
}

pub fn build_auxiliary_digraph(i: &PreferenceSystem) -> AuxiliaryDigraph {
    let mut vertices: Vec<AuxVertex> = i.vertices().map(AuxVertex::Original).collect();
    let mut arcs = Vec::new();
    let add = |vertices: &mut Vec<AuxVertex>, x: AuxVertex| {
        vertices.push(x);
        vertices.len() - 1
    };
    for v in i.vertices() {
        let groups = i.order(v).groups();
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        for g in groups {
            for &a in g {
                let m = add(&mut vertices, AuxVertex::Minus { a, v });
                let p = add(&mut vertices, AuxVertex::Plus { a, v });
                arcs.push(AuxArc { from: m, to: a.0, kind: AuxArcKind::Incidence });
                arcs.push(AuxArc { from: a.0, to: p, kind: AuxArcKind::Incidence });
                minus.push((a, m));
                plus.push((a, p));
            }
        }
        let idx = |list: &[(VertexId, usize)], a: VertexId| list.iter().find(|(x, _)| *x == a).expect("neighbour").1;
        for (r, g) in groups.iter().enumerate() {
            if g.len() > 1 {
                let t = add(&mut vertices, AuxVertex::Tie { v, group: r });
                for &a in g {
                    arcs.push(AuxArc { from: t, to: idx(&minus, a), kind: AuxArcKind::Tie });
                    arcs.push(AuxArc { from: idx(&plus, a), to: t, kind: AuxArcKind::Tie });
                }
            }
            for &b in g {
                for worse in &groups[r + 1..] {
                    for &a in worse {
                        let z = add(&mut vertices, AuxVertex::Pair { a, b, v });
                        arcs.push(AuxArc { from: idx(&plus, a), to: z, kind: AuxArcKind::Pair });
                        arcs.push(AuxArc { from: z, to: idx(&minus, b), kind: AuxArcKind::Pair });
                    }
                }
            }
        }
    }
    AuxiliaryDigraph { vertices, arcs }
}

/// Hits every relevant cycle using incidence arcs only and maps the result
/// back to edges.
/// Returns the number of arcs hit and the edges behind them.
fn solve_split(h: &AuxiliaryDigraph, marked: impl Fn(&AuxArc) -> bool, budget: usize) -> Option<(usize, Vec<Edge>)> {
    let g = ArcGraph::new(
        h.vertices.len(),
        h.arcs
            .iter()
            .map(|a| Arc { from: a.from, to: a.to, marked: marked(a) })
            .collect(),
    );
    let branchable: Vec<bool> = h.arcs.iter().map(|a| a.kind == AuxArcKind::Incidence).collect();
    let hit = fas::solve(
        &Problem {
            graph: &g,
            target: Target::MarkedCycles,
            branchable: Some(&branchable),
            canonical: false,
        },
        budget,
    )?;
    let mut edges: Vec<Edge> = hit.iter().filter_map(|&id| h.edge_of(&h.arcs[id])).collect();
    edges.sort_unstable();
    edges.dedup();
    Some((hit.len(), edges))
}

/// Strict instances only: the split digraph without pair vertices, where
/// every cycle is relevant.
fn strict_split(i: &PreferenceSystem) -> AuxiliaryDigraph {
    let full = build_auxiliary_digraph(i);
    let mut keep = vec![usize::MAX; full.vertices.len()];
    let mut vertices = Vec::new();
    for (k, x) in full.vertices.iter().enumerate() {
        if !matches!(x, AuxVertex::Pair { .. }) {
            keep[k] = vertices.len();
            vertices.push(*x);
        }
    }
    let mut arcs: Vec<AuxArc> = full
        .arcs
        .iter()
        .filter(|a| a.kind == AuxArcKind::Incidence)
        .map(|a| AuxArc { from: keep[a.from], to: keep[a.to], kind: a.kind })
        .collect();
    // one direct arc a⁺(v) → b⁻(v) per pair vertex
    let mut into = vec![usize::MAX; full.vertices.len()];
    for a in full.arcs.iter().filter(|a| a.kind == AuxArcKind::Pair) {
        if matches!(full.vertices[a.to], AuxVertex::Pair { .. }) {
            into[a.to] = a.from;
        }
    }
    for a in full.arcs.iter().filter(|a| a.kind == AuxArcKind::Pair) {
        if matches!(full.vertices[a.from], AuxVertex::Pair { .. }) {
            arcs.push(AuxArc { from: keep[into[a.from]], to: keep[a.to], kind: AuxArcKind::Pair });
        }
    }
    AuxiliaryDigraph { vertices, arcs }
}

/// Edge set of size at most `2·budget` whose deletion leaves a master-list
/// instance; guaranteed to be found when the exact edge distance is at most
/// `budget`, and then at most twice that distance.
pub fn delta_edge_2approx(i: &PreferenceSystem, budget: usize) -> Option<EdgeWitness> {
    let cap = budget.saturating_mul(2);
    let edges = if i.is_strict() {
        solve_split(&strict_split(i), |_| true, cap)?.1
    } else {
        general_2approx(i, cap)?.1
    };
    debug_assert!(admits_master_list(&i.delete_edges(&edges).expect("existing edges")).is_some());
    Some(EdgeWitness { edges })
}

pub(crate) fn general_2approx(i: &PreferenceSystem, cap: usize) -> Option<(usize, Vec<Edge>)> {
    solve_split(&build_auxiliary_digraph(i), |a| a.kind == AuxArcKind::Pair, cap)
}
