//! Popularity and max-utility popular matchings with instability costs.
//!
//! A matching is popular if no other matching wins a head-to-head vote,
//! where each vertex votes for the matching giving it the better partner
//! (being matched beats being unmatched).

use std::collections::BTreeMap;
use std::convert::Infallible;

use itertools::Itertools;
use rustworkx_core::max_weight_matching::max_weight_matching;
use rustworkx_core::petgraph::graph::{NodeIndex, UnGraph};

use crate::error::{Error, Result};
use crate::matching::{all_matchings, blocking_edges, enum_with_modulator, find_modulator, Matching, Modulator};
use crate::system::{Edge, PreferenceSystem, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VoteTally {
    pub for_first: usize,
    pub for_second: usize,
}

impl VoteTally {
    pub fn first_wins(self) -> bool {
        self.for_first > self.for_second
    }

    pub fn reversed(self) -> VoteTally {
        VoteTally { for_first: self.for_second, for_second: self.for_first }
    }
}

/// +1 if `v` prefers partner `x` to partner `y`, -1 for the reverse, else 0.
fn vote(i: &PreferenceSystem, v: VertexId, x: Option<VertexId>, y: Option<VertexId>) -> i64 {
    match (x, y) {
        (Some(_), None) => 1,
        (None, Some(_)) => -1,
        (Some(x), Some(y)) if i.prefers(v, x, y) => 1,
        (Some(x), Some(y)) if i.prefers(v, y, x) => -1,
        _ => 0,
    }
}

pub fn compare(i: &PreferenceSystem, m1: &Matching, m2: &Matching) -> VoteTally {
    let (a, b) = (m1.mates(i.len()), m2.mates(i.len()));
    let mut t = VoteTally::default();
    for v in i.vertices() {
        match vote(i, v, a[v.0], b[v.0]) {
            1 => t.for_first += 1,
            -1 => t.for_second += 1,
            _ => {}
        }
    }
    t
}

/// Edge count up to which [`is_popular`] compares against every matching.
pub const EXHAUSTIVE_EDGE_CAP: usize = 24;

/// Popularity by comparison with every matching.
pub fn is_popular_exhaustive(i: &PreferenceSystem, m: &Matching) -> Result<bool> {
    if i.edge_count() > EXHAUSTIVE_EDGE_CAP {
        return Err(Error::TooLarge(format!("{} edges exceed the cap of {EXHAUSTIVE_EDGE_CAP}", i.edge_count())));
    }
    Ok(all_matchings(i).iter().all(|other| !compare(i, other, m).first_wins()))
}

/// Popularity through one maximum-weight matching.
///
/// The vote margin of any `M'` over `m` is `Σ s(v) + Σ_{uv ∈ M'} w(u,v)`
/// where `s(v)` is the vote of `v` when left unmatched by `M'` and
/// `w(u,v) = vote_u(v) + vote_v(u) − s(u) − s(v)`. So `m` is popular iff
/// the heaviest matching under `w` has weight at most `−Σ s(v)`.
pub fn is_popular_weighted(i: &PreferenceSystem, m: &Matching) -> bool {
    let mate = m.mates(i.len());
    let s = |v: VertexId| vote(i, v, None, mate[v.0]);
    let base: i64 = i.vertices().map(s).sum();
    let mut g: UnGraph<(), i64> = UnGraph::with_capacity(i.len(), i.edge_count());
    for _ in 0..i.len() {
        g.add_node(());
    }
    for e in i.edges() {
        let (a, b) = e.endpoints();
        let w = vote(i, a, Some(b), mate[a.0]) + vote(i, b, Some(a), mate[b.0]) - s(a) - s(b);
        if w > 0 {
            g.add_edge(NodeIndex::new(a.0), NodeIndex::new(b.0), w);
        }
    }
    let best = max_weight_matching(&g, false, |e| Ok::<i128, Infallible>(*e.weight() as i128), false)
        .unwrap_or_else(|never| match never {});
    let weight: i64 = best
        .iter()
        .map(|&(a, b)| {
            let e = g.find_edge(NodeIndex::new(a), NodeIndex::new(b)).expect("matched along an edge");
            g[e]
        })
        .sum();
    base + weight <= 0
}

/// Exhaustive on small instances, weighted matching otherwise.
pub fn is_popular(i: &PreferenceSystem, m: &Matching) -> Result<bool> {
    if !i.is_strict() {
        return Err(Error::NotStrict);
    }
    if i.edge_count() <= EXHAUSTIVE_EDGE_CAP {
        is_popular_exhaustive(i, m)
    } else {
        Ok(is_popular_weighted(i, m))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MupmicInstance {
    system: PreferenceSystem,
    utility: BTreeMap<Edge, u64>,
    cost: BTreeMap<Edge, u64>,
    target: u64,
    budget: u64,
}

impl MupmicInstance {
    pub fn new(
        system: PreferenceSystem,
        utility: BTreeMap<Edge, u64>,
        cost: BTreeMap<Edge, u64>,
        target: u64,
        budget: u64,
    ) -> Result<Self> {
        if !system.is_strict() {
            return Err(Error::NotStrict);
        }
        let edges = system.edges();
        let covers = |map: &BTreeMap<Edge, u64>| map.len() == edges.len() && edges.iter().all(|e| map.contains_key(e));
        if !covers(&utility) || !covers(&cost) {
            return Err(Error::InvalidParams("utility and cost must be given for exactly the edges".into()));
        }
        if let Some(e) = cost.iter().find(|(_, &c)| c == 0).map(|(e, _)| *e) {
            let (a, b) = system.edge_names(e);
            return Err(Error::InvalidParams(format!("edge {a} -- {b} has cost 0")));
        }
        Ok(MupmicInstance { system, utility, cost, target, budget })
    }

    pub fn system(&self) -> &PreferenceSystem {
        &self.system
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn utility_of(&self, m: &Matching) -> u64 {
        m.edges().iter().map(|e| self.utility[e]).sum()
    }

    pub fn cost_of(&self, edges: &[Edge]) -> u64 {
        edges.iter().map(|e| self.cost[e]).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MupmicSolution {
    pub matching: Matching,
    pub utility: u64,
    /// Total cost of the blocking edges.
    pub cost: u64,
}

/// Edge sets of total cost within budget, by size, then cost, then
/// lexicographically.
fn candidate_blocking_sets(inst: &MupmicInstance) -> Vec<Vec<Edge>> {
    let edges = inst.system.edges();
    let max_size = usize::try_from(inst.budget).unwrap_or(usize::MAX).min(edges.len());
    let mut out = Vec::new();
    for k in 0..=max_size {
        let mut level: Vec<(u64, Vec<Edge>)> = edges
            .iter()
            .copied()
            .combinations(k)
            .map(|b| (inst.cost_of(&b), b))
            .filter(|(c, _)| *c <= inst.budget)
            .collect();
        if level.is_empty() {
            break;
        }
        level.sort();
        out.extend(level.into_iter().map(|(_, b)| b));
    }
    out
}

fn better(a: &MupmicSolution, b: &MupmicSolution) -> bool {
    (std::cmp::Reverse(a.utility), a.cost, &a.matching) < (std::cmp::Reverse(b.utility), b.cost, &b.matching)
}

/// A popular matching of utility at least the target whose blocking edges
/// cost at most the budget, maximising utility (then minimising cost).
pub fn solve_mupmic(inst: &MupmicInstance, modulator: &Modulator) -> Result<Option<MupmicSolution>> {
    let i = &inst.system;
    let mut best: Option<MupmicSolution> = None;
    for b in candidate_blocking_sets(inst) {
        for m in enum_with_modulator(i, &b, modulator)? {
            debug_assert_eq!(blocking_edges(i, &m), b);
            let utility = inst.utility_of(&m);
            if utility < inst.target || !is_popular(i, &m)? {
                continue;
            }
            let cand = MupmicSolution { matching: m, utility, cost: inst.cost_of(&b) };
            if best.as_ref().is_none_or(|cur| better(&cand, cur)) {
                best = Some(cand);
            }
        }
    }
    Ok(best)
}

/// [`solve_mupmic`] with a modulator found automatically.
pub fn solve_mupmic_auto(inst: &MupmicInstance) -> Result<Option<MupmicSolution>> {
    solve_mupmic(inst, &find_modulator(&inst.system))
}

/// Reference answer by checking every matching.
pub fn brute_force_mupmic(inst: &MupmicInstance) -> Result<Option<MupmicSolution>> {
    let i = &inst.system;
    let mut best: Option<MupmicSolution> = None;
    for m in all_matchings(i) {
        let cost = inst.cost_of(&blocking_edges(i, &m));
        let utility = inst.utility_of(&m);
        if cost > inst.budget || utility < inst.target || !is_popular_exhaustive(i, &m)? {
            continue;
        }
        let cand = MupmicSolution { matching: m, utility, cost };
        if best.as_ref().is_none_or(|cur| better(&cand, cur)) {
            best = Some(cand);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::parse_instance;
    use crate::generators::{gen_four_cycles, gen_random};
    use crate::matching::unique_stable_ml;
    use crate::prefdigraph::admits_master_list;

    fn unit(i: &PreferenceSystem, u: u64) -> BTreeMap<Edge, u64> {
        i.edges().into_iter().map(|e| (e, u)).collect()
    }

    #[test]
    fn single_edge_votes() {
        let i = parse_instance("a : b\nb : a").unwrap();
        let full = Matching::new(i.edges()).unwrap();
        let empty = Matching::empty();
        assert_eq!(compare(&i, &full, &full), VoteTally::default());
        assert_eq!(compare(&i, &full, &empty), VoteTally { for_first: 2, for_second: 0 });
        assert!(is_popular(&i, &full).unwrap());
        assert!(!is_popular(&i, &empty).unwrap());
        assert!(!is_popular_weighted(&i, &empty));
    }

    #[test]
    fn four_cycle_tie_vote() {
        let i = gen_four_cycles(1);
        let e = |a, b| i.edge_by_names(a, b).unwrap();
        let m1 = Matching::new(vec![e("1", "2"), e("3", "4")]).unwrap();
        let m2 = Matching::new(vec![e("2", "3"), e("4", "1")]).unwrap();
        assert_eq!(compare(&i, &m1, &m2), VoteTally { for_first: 2, for_second: 2 });
    }

    #[test]
    fn stable_matching_of_master_list_instance_is_popular() {
        let i = parse_instance("a : b > c\nb : a > c\nc : a > b").unwrap();
        let m = unique_stable_ml(&i, &admits_master_list(&i).unwrap()).unwrap();
        assert!(is_popular(&i, &m).unwrap());
    }

    #[test]
    fn weighted_agrees_with_exhaustive() {
        for seed in 0..30 {
            let i = gen_random(6, 0.5, 0.0, seed).unwrap();
            for m in all_matchings(&i) {
                assert_eq!(is_popular_weighted(&i, &m), is_popular_exhaustive(&i, &m).unwrap(), "seed {seed}");
                let (x, y) = (compare(&i, &m, &Matching::empty()), compare(&i, &Matching::empty(), &m));
                assert_eq!(x, y.reversed());
            }
        }
    }

    #[test]
    fn mupmic_basics() {
        let i = parse_instance("a : b > c\nb : a > c\nc : a > b").unwrap();
        let inst = MupmicInstance::new(i.clone(), unit(&i, 1), unit(&i, 1), 1, 0).unwrap();
        let sol = solve_mupmic(&inst, &Modulator::Edges(vec![])).unwrap().unwrap();
        assert_eq!(sol.cost, 0);
        assert_eq!(sol.matching.edges(), &[i.edge_by_names("a", "b").unwrap()]);
        let unreachable = MupmicInstance::new(i.clone(), unit(&i, 1), unit(&i, 1), 10, 2).unwrap();
        assert_eq!(solve_mupmic_auto(&unreachable).unwrap(), None);
        assert!(MupmicInstance::new(i.clone(), unit(&i, 1), unit(&i, 0), 0, 0).is_err());
        let c = gen_four_cycles(1);
        let inst = MupmicInstance::new(c.clone(), unit(&c, 1), unit(&c, 1), 0, 0).unwrap();
        assert_eq!(solve_mupmic(&inst, &Modulator::Edges(vec![])), Err(Error::ModulatorInvalid));
    }

    #[test]
    fn mupmic_matches_brute_force() {
        for seed in 0..15 {
            let i = gen_random(6, 0.5, 0.0, seed).unwrap();
            let utility = i.edges().into_iter().enumerate().map(|(k, e)| (e, (k as u64 * 7 + seed) % 5)).collect();
            let inst = MupmicInstance::new(i.clone(), utility, unit(&i, 1), 2, 1).unwrap();
            let got = solve_mupmic_auto(&inst).unwrap();
            let want = brute_force_mupmic(&inst).unwrap();
            assert_eq!(got.map(|s| s.utility), want.map(|s| s.utility), "seed {seed}");
        }
    }
}
