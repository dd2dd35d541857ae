//! Shared digraph machinery: shortest cycles through marked arcs, strongly
//! connected components, acyclicity.
//!
//! Arcs are identified by their index; adjacency lists keep index order so
//! every search is deterministic.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Arc {
    pub from: usize,
    pub to: usize,
    /// Cycles through at least one marked arc are the relevant ones.
    pub marked: bool,
}

// per vertex: (distance, parent arc)
type BfsTree = Vec<Option<(usize, Option<usize>)>>;

#[derive(Debug, Clone)]
pub(crate) struct ArcGraph {
    pub n: usize,
    pub arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl ArcGraph {
    pub fn new(n: usize, arcs: Vec<Arc>) -> Self {
        let mut out = vec![Vec::new(); n];
        for (id, a) in arcs.iter().enumerate() {
            out[a.from].push(id);
        }
        ArcGraph { n, arcs, out }
    }

    /// BFS distances from `src` over alive arcs, with the arc used to reach
    /// each vertex.
    fn bfs(&self, src: usize, alive: &[bool]) -> Vec<Option<(usize, Option<usize>)>> {
        let mut seen: Vec<Option<(usize, Option<usize>)>> = vec![None; self.n];
        seen[src] = Some((0, None));
        let mut queue = VecDeque::from([src]);
        while let Some(x) = queue.pop_front() {
            let d = seen[x].expect("queued vertices are seen").0;
            for &id in &self.out[x] {
                if !alive[id] {
                    continue;
                }
                let y = self.arcs[id].to;
                if seen[y].is_none() {
                    seen[y] = Some((d + 1, Some(id)));
                    queue.push_back(y);
                }
            }
        }
        seen
    }

    /// Shortest cycle containing a marked alive arc: for each marked arc
    /// `(a,b)` take a shortest `b → a` path. Ties go to the marked arc with
    /// the smallest id. The cycle starts with that marked arc.
    pub fn shortest_marked_cycle(&self, alive: &[bool]) -> Option<Vec<usize>> {
        let mut best: Option<(usize, usize)> = None; // (length, marked arc id)
        let mut cache: Vec<Option<BfsTree>> = vec![None; self.n];
        for (id, arc) in self.arcs.iter().enumerate() {
            if !arc.marked || !alive[id] {
                continue;
            }
            if arc.from == arc.to {
                return Some(vec![id]);
            }
            let dist = cache[arc.to].get_or_insert_with(|| self.bfs(arc.to, alive));
            if let Some((d, _)) = dist[arc.from] {
                let len = d + 1;
                if best.is_none_or(|(bl, _)| len < bl) {
                    best = Some((len, id));
                    if len == 2 {
                        break;
                    }
                }
            }
        }
        let (_, start) = best?;
        let (a, b) = (self.arcs[start].from, self.arcs[start].to);
        let dist = cache[b].take().unwrap_or_else(|| self.bfs(b, alive));
        let mut path = Vec::new();
        let mut x = a;
        while x != b {
            let via = dist[x].and_then(|(_, p)| p).expect("path exists");
            path.push(via);
            x = self.arcs[via].from;
        }
        path.reverse();
        let mut cycle = vec![start];
        cycle.extend(path);
        Some(cycle)
    }

    /// Strongly connected components of the alive subgraph (Tarjan,
    /// iterative). Components are returned in discovery order; each lists
    /// its vertices sorted.
    pub fn sccs(&self, alive: &[bool]) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut next = 0usize;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < self.out[v].len() {
                    let id = self.out[v][*pos];
                    *pos += 1;
                    if !alive[id] {
                        continue;
                    }
                    let w = self.arcs[id].to;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().expect("tarjan stack");
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        comps
    }

    /// Component id per vertex.
    pub fn scc_ids(&self, alive: &[bool]) -> Vec<usize> {
        let mut id = vec![0; self.n];
        for (c, comp) in self.sccs(alive).iter().enumerate() {
            for &v in comp {
                id[v] = c;
            }
        }
        id
    }

    pub fn is_acyclic(&self, alive: &[bool]) -> bool {
        let mut indeg = vec![0usize; self.n];
        for (id, a) in self.arcs.iter().enumerate() {
            if alive[id] {
                if a.from == a.to {
                    return false;
                }
                indeg[a.to] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop() {
            done += 1;
            for &id in &self.out[v] {
                if alive[id] {
                    let w = self.arcs[id].to;
                    indeg[w] -= 1;
                    if indeg[w] == 0 {
                        queue.push(w);
                    }
                }
            }
        }
        done == self.n
    }

    /// Reachability closure over alive arcs (reflexive), as bit rows.
    pub fn reachability(&self, alive: &[bool]) -> Vec<Vec<bool>> {
        (0..self.n)
            .map(|s| self.bfs(s, alive).iter().map(Option::is_some).collect())
            .collect()
    }
}
