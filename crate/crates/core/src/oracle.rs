//! Brute-force reference implementations, used to cross-check the real
//! solvers on small inputs. Nothing here goes through the preference
//! digraph.

use itertools::Itertools;

use crate::generators::HittingSetInstance;
use crate::matching::{all_matchings, blocking_edges, Matching};
use crate::error::{Error, Result};
use crate::system::{swap_distance_orders, Edge, PreferenceSystem, VertexId, WeakOrder};

/// Every weak order (ordered set partition) of `0..n`. There are 75 for
/// `n = 4` and 541 for `n = 5`.
pub fn all_weak_orders(n: usize) -> Vec<WeakOrder> {
    fn rec(rest: &[usize], prefix: &mut Vec<Vec<VertexId>>, out: &mut Vec<WeakOrder>) {
        if rest.is_empty() {
            out.push(WeakOrder::new(prefix.clone()).expect("disjoint groups"));
            return;
        }
        for mask in 1u32..(1 << rest.len()) {
            let (group, others): (Vec<usize>, Vec<usize>) =
                rest.iter().enumerate().partition_map(|(k, &v)| {
                    if mask >> k & 1 == 1 {
                        itertools::Either::Left(v)
                    } else {
                        itertools::Either::Right(v)
                    }
                });
            prefix.push(group.into_iter().map(VertexId).collect());
            rec(&others, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(&(0..n).collect::<Vec<_>>(), &mut Vec::new(), &mut out);
    out
}

fn restriction(i: &PreferenceSystem, ml: &WeakOrder, v: VertexId) -> WeakOrder {
    ml.restrict(|u| i.has_edge(v, u))
}

/// Direct check: every vertex's order is `ml` restricted to its neighbours.
pub fn consistent_with(i: &PreferenceSystem, ml: &WeakOrder) -> bool {
    i.vertices().all(|v| {
        let order = i.order(v);
        let nbrs: Vec<VertexId> = order.iter().collect();
        nbrs.iter().tuple_combinations().all(|(&x, &y)| {
            order.rank_of(x).cmp(&order.rank_of(y)) == ml.rank_of(x).cmp(&ml.rank_of(y))
        })
    })
}

/// Some master list found by trying every weak order of the vertices.
pub fn brute_force_master_list(i: &PreferenceSystem) -> Option<WeakOrder> {
    all_weak_orders(i.len()).into_iter().find(|ml| consistent_with(i, ml))
}

/// Minimum swap distance to a master-list instance: the minimum over all
/// weak master lists of the summed per-vertex distance to the restrictions.
pub fn brute_force_swap_distance(i: &PreferenceSystem) -> u64 {
    all_weak_orders(i.len())
        .iter()
        .map(|ml| {
            i.vertices()
                .map(|v| {
                    swap_distance_orders(i.order(v), &restriction(i, ml, v))
                        .finite()
                        .expect("same ground set")
                })
                .sum::<u64>()
        })
        .min()
        .unwrap_or(0)
}

/// Smallest edge set whose deletion leaves a master-list instance.
pub fn brute_force_edge_distance(i: &PreferenceSystem) -> usize {
    let edges = i.edges();
    (0..=edges.len())
        .find(|&k| {
            edges.iter().copied().combinations(k).any(|s| {
                brute_force_master_list(&i.delete_edges(&s).expect("existing edges")).is_some()
            })
        })
        .expect("deleting every edge always works")
}

/// Smallest vertex set whose deletion leaves a master-list instance.
pub fn brute_force_vertex_distance(i: &PreferenceSystem) -> usize {
    let n = i.len();
    (0..=n)
        .find(|&k| {
            (0..n).map(VertexId).combinations(k).any(|s| {
                brute_force_master_list(&i.delete_vertices(&s).expect("existing vertices")).is_some()
            })
        })
        .expect("deleting every vertex always works")
}

fn acyclic(n: usize, arcs: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n];
    for &(_, b) in arcs {
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &(a, b) in arcs {
            if a == v {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    stack.push(b);
                }
            }
        }
    }
    seen == n
}

/// Minimum feedback arc set size over all arc subsets.
pub fn brute_force_min_fas(n: usize, arcs: &[(usize, usize)]) -> usize {
    (0..=arcs.len())
        .find(|&k| {
            (0..arcs.len()).combinations(k).any(|drop| {
                let keep: Vec<(usize, usize)> = arcs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !drop.contains(j))
                    .map(|(_, &a)| a)
                    .collect();
                acyclic(n, &keep)
            })
        })
        .expect("deleting every arc always works")
}

/// Minimum hitting set size over all subsets of the universe.
pub fn brute_force_min_hitting_set(h: &HittingSetInstance) -> usize {
    let n = h.universe.len();
    (0..=n)
        .find(|&k| {
            (0..n)
                .combinations(k)
                .any(|hs| h.sets.iter().all(|s| s.iter().any(|u| hs.contains(u))))
        })
        .unwrap_or(n)
}

/// Every matching whose blocking set is exactly `b`, by full enumeration.
pub fn brute_force_with_blocking(i: &PreferenceSystem, b: &[Edge], cap: usize) -> Result<Vec<Matching>> {
    if i.edge_count() > cap {
        return Err(Error::TooLarge(format!("{} edges exceed the cap of {cap}", i.edge_count())));
    }
    let mut want = b.to_vec();
    want.sort_unstable();
    Ok(all_matchings(i)
        .into_iter()
        .filter(|m| blocking_edges(i, m) == want)
        .collect())
}
