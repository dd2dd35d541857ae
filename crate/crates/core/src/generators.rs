//! Instance generators: the tight families for stable-matching counts, the
//! two hardness reductions (used as test generators), and seeded random
//! instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::system::{PreferenceSystem, VertexId, WeakOrder};

/// Builds a system from names and per-vertex orders given as name groups.
fn from_named(names: Vec<String>, prefs: Vec<Vec<Vec<usize>>>) -> PreferenceSystem {
    let orders = prefs
        .into_iter()
        .map(|groups| {
            WeakOrder::new(
                groups
                    .into_iter()
                    .map(|g| g.into_iter().map(VertexId).collect())
                    .collect(),
            )
            .expect("generated orders have no repeats")
        })
        .collect();
    PreferenceSystem::new(names, orders).expect("generated instances are valid")
}

fn strict(list: Vec<usize>) -> Vec<Vec<usize>> {
    list.into_iter().map(|v| vec![v]).collect()
}

/// `k` disjoint 4-cycles with cyclic preferences, vertices `1..=4k`. In each
/// cycle every vertex prefers its successor to its predecessor.
pub fn gen_four_cycles(k: usize) -> PreferenceSystem {
    let n = 4 * k;
    let names = (1..=n).map(|v| v.to_string()).collect();
    let prefs = (0..n)
        .map(|v| {
            let base = v - v % 4;
            let next = base + (v + 1) % 4;
            let prev = base + (v + 3) % 4;
            strict(vec![next, prev])
        })
        .collect();
    from_named(names, prefs)
}

/// The family with `2n` vertices, vertex-deletion distance `k` and
/// `C(n, k)` stable matchings. Vertices are `a1..an`, `b1..b(n-k)`,
/// `s1..sk` in that id order.
pub fn gen_jkn(k: usize, n: usize) -> Result<PreferenceSystem> {
    if k < 1 || n < k {
        return Err(Error::InvalidParams(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    let nb = n - k;
    let a = |i: usize| i - 1;
    let b = |j: usize| n + j - 1;
    let s = |l: usize| n + nb + l - 1;
    let b_exists = |j: isize| j >= 1 && j as usize <= nb;

    let mut names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    names.extend((1..=nb).map(|j| format!("b{j}")));
    names.extend((1..=k).map(|l| format!("s{l}")));

    let mut prefs = Vec::with_capacity(2 * n);
    for i in 1..=n {
        let mut list = Vec::new();
        let ii = i as isize;
        if b_exists(ii) {
            list.push(b(i));
        }
        for l in 1..=k {
            list.push(s(l));
            let j = ii - l as isize;
            if b_exists(j) {
                list.push(b(j as usize));
            }
        }
        prefs.push(strict(list));
    }
    for j in 1..=nb {
        // a_i with j <= i <= j + k, higher index preferred
        prefs.push(strict((j..=j + k).rev().filter(|&i| i <= n).map(a).collect()));
    }
    for _ in 1..=k {
        prefs.push(strict((1..=n).map(a).collect()));
    }
    Ok(from_named(names, prefs))
}

/// Unlabelled digraph on vertices `0..vertex_count`; parallel arcs allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDigraph {
    pub vertex_count: usize,
    pub arcs: Vec<(usize, usize)>,
}

impl RawDigraph {
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for &(a, b) in &arcs {
            if a == b {
                return Err(Error::InvalidParams(format!("loop at vertex {a}")));
            }
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::InvalidParams(format!("arc ({a},{b}) out of range")));
            }
        }
        Ok(RawDigraph { vertex_count, arcs })
    }

    /// Random digraph with `arc_count` arcs, parallel arcs allowed.
    pub fn random(vertex_count: usize, arc_count: usize, seed: u64) -> Result<Self> {
        if vertex_count < 2 && arc_count > 0 {
            return Err(Error::InvalidParams("arcs need at least two vertices".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arcs = (0..arc_count)
            .map(|_| {
                let a = rng.gen_range(0..vertex_count);
                let b = (a + rng.gen_range(1..vertex_count)) % vertex_count;
                (a, b)
            })
            .collect();
        Ok(RawDigraph { vertex_count, arcs })
    }
}

/// Subdivides every arc `(a,b)` with a vertex `z` that prefers `b` to `a`.
/// Original vertices are `v1..`, subdivision vertices `z1..` in arc order;
/// the original vertices rank their `z` neighbours by that order.
pub fn reduce_fas_to_ml(d: &RawDigraph) -> PreferenceSystem {
    let n = d.vertex_count;
    let mut names: Vec<String> = (1..=n).map(|v| format!("v{v}")).collect();
    names.extend((1..=d.arcs.len()).map(|e| format!("z{e}")));
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut z_prefs = Vec::new();
    for (e, &(a, b)) in d.arcs.iter().enumerate() {
        incident[a].push(n + e);
        incident[b].push(n + e);
        z_prefs.push(strict(vec![b, a]));
    }
    let mut prefs: Vec<Vec<Vec<usize>>> = incident.into_iter().map(strict).collect();
    prefs.extend(z_prefs);
    from_named(names, prefs)
}

/// Universe elements are named; sets hold indices into the universe, and
/// the order within a set matters for the reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetInstance {
    pub universe: Vec<String>,
    pub sets: Vec<Vec<usize>>,
}

impl HittingSetInstance {
    pub fn new(universe: Vec<String>, sets: Vec<Vec<usize>>) -> Result<Self> {
        for (i, set) in sets.iter().enumerate() {
            if set.is_empty() {
                return Err(Error::InvalidParams(format!("set {} is empty", i + 1)));
            }
            let mut sorted = set.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != set.len() || sorted.iter().any(|&u| u >= universe.len()) {
                return Err(Error::InvalidParams(format!("set {} is malformed", i + 1)));
            }
        }
        Ok(HittingSetInstance { universe, sets })
    }

    /// Random instance: each set draws each element with probability 1/2,
    /// resampled until non-empty.
    pub fn random(universe_size: usize, set_count: usize, seed: u64) -> Result<Self> {
        if universe_size == 0 && set_count > 0 {
            return Err(Error::InvalidParams("sets need a non-empty universe".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let universe = (1..=universe_size).map(|u| format!("u{u}")).collect();
        let sets = (0..set_count)
            .map(|_| loop {
                let mut set: Vec<usize> = (0..universe_size).filter(|_| rng.gen_bool(0.5)).collect();
                if !set.is_empty() {
                    set.shuffle(&mut rng);
                    break set;
                }
            })
            .collect();
        HittingSetInstance::new(universe, sets)
    }
}

/// Builds the vertex-deletion instance whose distance equals the minimum
/// hitting set size.
///
/// Set `i` gets agents `x{i}_1..`; its `j`-th element is adjacent to agents
/// `j` and `j+1` (cyclically) and prefers `j+1`. A singleton set would give a
/// single edge with no conflict, so it gets two agents and an extra vertex
/// `y{i}` that orders them the other way.
pub fn reduce_hitting_set_to_mlvd(h: &HittingSetInstance) -> PreferenceSystem {
    let nu = h.universe.len();
    let mut names: Vec<String> = h.universe.clone();
    let mut first_x = Vec::with_capacity(h.sets.len());
    for (i, set) in h.sets.iter().enumerate() {
        first_x.push(names.len());
        for j in 1..=set.len().max(2) {
            names.push(format!("x{}_{}", i + 1, j));
        }
    }
    let mut y_of = vec![None; h.sets.len()];
    for (i, set) in h.sets.iter().enumerate() {
        if set.len() == 1 {
            y_of[i] = Some(names.len());
            names.push(format!("y{}", i + 1));
        }
    }
    let total = names.len();

    // Neighbour lists as (key, vertex); smaller key is more preferred.
    let mut nbrs: Vec<Vec<(usize, usize)>> = vec![Vec::new(); total];
    for (i, set) in h.sets.iter().enumerate() {
        let agents = set.len().max(2);
        let x = |j: usize| first_x[i] + (j % agents);
        for (j, &u) in set.iter().enumerate() {
            let (lo, hi) = (x(j), x(j + 1));
            // later sets preferred; within a set agent j+1 over agent j
            let rank = |pos: usize| usize::MAX - (2 * i + pos);
            nbrs[u].push((rank(1), hi));
            nbrs[u].push((rank(0), lo));
            nbrs[lo].push((u, u));
            nbrs[hi].push((u, u));
        }
        if let Some(y) = y_of[i] {
            let (lo, hi) = (x(0), x(1));
            nbrs[y].push((0, lo));
            nbrs[y].push((1, hi));
            nbrs[lo].push((nu, y));
            nbrs[hi].push((nu, y));
        }
    }
    let prefs = nbrs
        .into_iter()
        .map(|mut list| {
            list.sort_unstable();
            strict(list.into_iter().map(|(_, v)| v).collect())
        })
        .collect();
    from_named(names, prefs)
}

/// Random instance on `v1..vn`: each pair is an edge with probability
/// `edge_prob`; each neighbour list is a random permutation whose adjacent
/// entries are tied with probability `tie_prob`.
pub fn gen_random(n: usize, edge_prob: f64, tie_prob: f64, seed: u64) -> Result<PreferenceSystem> {
    for (what, p) in [("edge", edge_prob), ("tie", tie_prob)] {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParams(format!("{what} probability {p} not in [0,1]")));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(edge_prob) {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    let names = (1..=n).map(|v| format!("v{v}")).collect();
    let prefs = adj
        .into_iter()
        .map(|mut list| {
            list.shuffle(&mut rng);
            let mut groups: Vec<Vec<usize>> = Vec::new();
            for v in list {
                match groups.last_mut() {
                    Some(g) if rng.gen_bool(tie_prob) => g.push(v),
                    _ => groups.push(vec![v]),
                }
            }
            groups
        })
        .collect();
    Ok(from_named(names, prefs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::{format_order, serialize_instance};
    use crate::prefdigraph::admits_master_list;

    #[test]
    fn four_cycles_shape() {
        assert!(gen_four_cycles(0).is_empty());
        let i = gen_four_cycles(2);
        assert_eq!(i.len(), 8);
        assert_eq!(i.edge_count(), 8);
        let v5 = i.require("5").unwrap();
        assert_eq!(format_order(&i, i.order(v5)), "6 > 8");
    }

    #[test]
    fn jkn_shape() {
        let i = gen_jkn(1, 2).unwrap();
        assert_eq!(i.names(), &["a1", "a2", "b1", "s1"]);
        assert_eq!(format_order(&i, i.order(VertexId(1))), "s1 > b1");
        assert_eq!(format_order(&i, i.order(VertexId(0))), "b1 > s1");
        assert_eq!(format_order(&i, i.order(VertexId(2))), "a2 > a1");
        let j = gen_jkn(3, 5).unwrap();
        assert_eq!(j.len(), 10);
        let a3 = j.require("a3").unwrap();
        assert_eq!(format_order(&j, j.order(a3)), "s1 > b2 > s2 > b1 > s3");
        let s: Vec<VertexId> = ["s1", "s2", "s3"].iter().map(|n| j.require(n).unwrap()).collect();
        assert!(admits_master_list(&j.delete_vertices(&s).unwrap()).is_some());
        assert!(gen_jkn(3, 2).is_err());
        assert!(gen_jkn(0, 2).is_err());
    }

    #[test]
    fn fas_reduction() {
        let d = RawDigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        let i = reduce_fas_to_ml(&d);
        assert_eq!(serialize_instance(&i), "v1 : z1 > z2\nv2 : z1 > z2\nz1 : v2 > v1\nz2 : v1 > v2\n");
        assert!(admits_master_list(&i).is_none());
        let acyclic = RawDigraph::new(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(admits_master_list(&reduce_fas_to_ml(&acyclic)).is_some());
        assert!(admits_master_list(&reduce_fas_to_ml(&RawDigraph::new(3, vec![]).unwrap())).is_some());
        assert!(RawDigraph::new(2, vec![(1, 1)]).is_err());
    }

    #[test]
    fn hitting_set_reduction() {
        let h = HittingSetInstance::new(vec!["u".into()], vec![vec![0]]).unwrap();
        let i = reduce_hitting_set_to_mlvd(&h);
        assert_eq!(i.names(), &["u", "x1_1", "x1_2", "y1"]);
        assert!(admits_master_list(&i).is_none());
        let u = i.require("u").unwrap();
        assert!(admits_master_list(&i.delete_vertices(&[u]).unwrap()).is_some());

        let empty = HittingSetInstance::new(vec!["a".into()], vec![]).unwrap();
        assert!(admits_master_list(&reduce_hitting_set_to_mlvd(&empty)).is_some());

        let h = HittingSetInstance::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![vec![0, 1], vec![1, 2]],
        )
        .unwrap();
        let i = reduce_hitting_set_to_mlvd(&h);
        let two = i.require("2").unwrap();
        assert!(admits_master_list(&i).is_none());
        assert!(admits_master_list(&i.delete_vertices(&[two]).unwrap()).is_some());
        assert!(HittingSetInstance::new(vec!["a".into()], vec![vec![]]).is_err());
    }

    #[test]
    fn random_is_deterministic() {
        assert!(gen_random(0, 0.5, 0.5, 1).unwrap().is_empty());
        assert_eq!(gen_random(6, 0.0, 0.3, 9).unwrap().edge_count(), 0);
        let a = gen_random(5, 1.0, 0.0, 42).unwrap();
        assert_eq!(a.edge_count(), 10);
        assert!(a.is_strict());
        assert_eq!(serialize_instance(&a), serialize_instance(&gen_random(5, 1.0, 0.0, 42).unwrap()));
        assert!(gen_random(3, 1.5, 0.0, 0).is_err());
    }
}
