//! Branch and bound for the interference decision problem.
//!
//! The search grows a forest of the complete graph. Every node carries a
//! lower bound on its final radius: its current forest radius, or, while it
//! has no forest edge, the shortest edge it may still receive. Radii only
//! grow as edges are added, so interference counts computed from these
//! bounds never exceed the counts of any completion. A state is pruned as
//! soon as some bound count exceeds `k`; candidate edges that would push a
//! count over `k` are excluded, which can raise the bounds of isolated nodes
//! and trigger further exclusions.
//!
//! Branching picks the component with the fewest remaining outgoing edges
//! and tries them shortest first; the i-th child includes edge i and
//! excludes edges 0..i, so every tree is reached at most once.

use super::{
    distance_matrix, emst_tree, local_search, Decision, Meter, SearchBudget, SolveResult,
    SolveStats,
};
use crate::error::{Error, Result};
use crate::model::{Edge, NodeSet, SpanningTree};
use crate::unionfind::UnionFind;

/// Search for a spanning tree whose maximum interference is at most `k`.
pub fn decide_interference_le(
    nodes: &NodeSet,
    k: usize,
    budget: &SearchBudget,
) -> Result<(Decision, SolveStats)> {
    let mut meter = Meter::new(budget);
    let (decision, mut stats) = decide_metered(nodes, k, &mut meter)?;
    stats.elapsed = meter.elapsed();
    Ok((decision, stats))
}

fn decide_metered(nodes: &NodeSet, k: usize, meter: &mut Meter) -> Result<(Decision, SolveStats)> {
    let n = nodes.len();
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
            hint: "",
        });
    }
    let start_units = meter.units();
    let mut search = Search {
        n,
        k,
        dist: distance_matrix(nodes),
        meter,
        pruned: 0,
        exhausted: false,
    };
    let root = State::root(n);
    let found = search.explore(root);
    let stats = SolveStats {
        trees_examined: search.meter.units() - start_units,
        nodes_pruned: search.pruned,
        elapsed: Default::default(),
    };
    let decision = match found {
        Some(edges) => Decision::Found(SpanningTree::new(edges)),
        None if search.exhausted => Decision::BudgetExhausted,
        None => Decision::None,
    };
    Ok((decision, stats))
}

/// Exact min-max interference by an ascending sweep over `k`.
///
/// An EMST improved by local search supplies the incumbent and the upper
/// end of the sweep. If the budget runs out, the incumbent is returned with
/// `certified == false`.
pub fn minmax_bnb(nodes: &NodeSet, budget: &SearchBudget) -> Result<SolveResult> {
    let n = nodes.len();
    if n < 2 {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: usize::MAX,
            hint: "",
        });
    }
    let mut meter = Meter::new(budget);
    let incumbent = local_search(
        nodes,
        &emst_tree(nodes),
        &SearchBudget::unlimited().with_seed(budget.rng_seed),
    )?;
    let mut stats = SolveStats::default();
    stats.absorb(&incumbent.stats);
    for k in 1..incumbent.objective {
        let (decision, s) = decide_metered(nodes, k, &mut meter)?;
        stats.absorb(&s);
        match decision {
            Decision::Found(tree) => {
                stats.elapsed = meter.elapsed();
                return SolveResult::new(nodes, tree, true, stats);
            }
            Decision::None => continue,
            Decision::BudgetExhausted => {
                stats.elapsed = meter.elapsed();
                return SolveResult::new(nodes, incumbent.tree, false, stats);
            }
        }
    }
    stats.elapsed = meter.elapsed();
    SolveResult::new(nodes, incumbent.tree, true, stats)
}

#[derive(Clone)]
struct State {
    uf: UnionFind,
    edges: Vec<Edge>,
    /// forest radius per node
    radius: Vec<u64>,
    /// row-major n x n; true while the edge may still be added
    allowed: Vec<bool>,
}

impl State {
    fn root(n: usize) -> Self {
        let mut allowed = vec![true; n * n];
        for v in 0..n {
            allowed[v * n + v] = false;
        }
        State {
            uf: UnionFind::new(n),
            edges: Vec::with_capacity(n - 1),
            radius: vec![0; n],
            allowed,
        }
    }

    fn exclude(&mut self, n: usize, u: usize, v: usize) {
        self.allowed[u * n + v] = false;
        self.allowed[v * n + u] = false;
    }
}

struct Search<'m> {
    n: usize,
    k: usize,
    dist: Vec<u64>,
    meter: &'m mut Meter,
    pruned: u64,
    exhausted: bool,
}

impl Search<'_> {
    fn d(&self, u: usize, v: usize) -> u64 {
        self.dist[u * self.n + v]
    }

    fn explore(&mut self, mut state: State) -> Option<Vec<Edge>> {
        if self.exhausted {
            return None;
        }
        if !self.meter.tick() {
            self.exhausted = true;
            return None;
        }
        if !self.propagate(&mut state) {
            self.pruned += 1;
            return None;
        }
        let n = self.n;
        if state.edges.len() + 1 == n {
            return Some(state.edges);
        }
        let options = self.branch_edges(&mut state);
        for (i, &(u, v)) in options.iter().enumerate() {
            let mut child = state.clone();
            for &(a, b) in &options[..i] {
                child.exclude(n, a, b);
            }
            let d = self.d(u, v);
            child.uf.union(u, v);
            child.edges.push(Edge::new(u, v));
            child.radius[u] = child.radius[u].max(d);
            child.radius[v] = child.radius[v].max(d);
            child.exclude(n, u, v);
            if let Some(found) = self.explore(child) {
                return Some(found);
            }
            if self.exhausted {
                return None;
            }
        }
        None
    }

    /// Lower-bound radii: forest radius, or the shortest allowed edge for a
    /// node that has no forest edge yet. `None` if such a node has no
    /// allowed edge left.
    fn bound_radii(&self, state: &State) -> Option<Vec<u64>> {
        let n = self.n;
        let mut has_edge = vec![false; n];
        for e in &state.edges {
            has_edge[e.a] = true;
            has_edge[e.b] = true;
        }
        let mut r = state.radius.clone();
        for v in 0..n {
            if has_edge[v] {
                continue;
            }
            let shortest = (0..n)
                .filter(|&w| state.allowed[v * n + w])
                .map(|w| self.d(v, w))
                .min()?;
            r[v] = shortest;
        }
        Some(r)
    }

    fn counts(&self, r: &[u64]) -> Vec<usize> {
        let n = self.n;
        let mut c = vec![0usize; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && self.d(u, v) <= r[u] {
                    c[v] += 1;
                }
            }
        }
        c
    }

    /// Tighten `state` to a fixpoint. Returns false if it cannot be
    /// completed to a tree with interference at most `k`.
    fn propagate(&self, state: &mut State) -> bool {
        let n = self.n;
        let k = self.k;
        let mut roots: Vec<usize> = (0..n).map(|v| state.uf.find(v)).collect();
        loop {
            // edges inside a component would close a cycle
            for u in 0..n {
                for v in u + 1..n {
                    if state.allowed[u * n + v] && roots[u] == roots[v] {
                        state.exclude(n, u, v);
                    }
                }
            }
            let Some(r) = self.bound_radii(state) else {
                return false;
            };
            let counts = self.counts(&r);
            if counts.iter().any(|&c| c > k) {
                return false;
            }
            let mut changed = false;
            let mut extra = vec![0usize; n];
            for u in 0..n {
                for v in u + 1..n {
                    if !state.allowed[u * n + v] {
                        continue;
                    }
                    let d = self.d(u, v);
                    extra.iter_mut().for_each(|x| *x = 0);
                    for end in [u, v] {
                        let grown = r[end].max(d);
                        if grown == r[end] {
                            continue;
                        }
                        for x in 0..n {
                            let dx = self.d(end, x);
                            if x != end && dx <= grown && dx > r[end] {
                                extra[x] += 1;
                            }
                        }
                    }
                    if (0..n).any(|x| counts[x] + extra[x] > k) {
                        state.exclude(n, u, v);
                        changed = true;
                    }
                }
            }
            if !self.connectable(state) {
                return false;
            }
            if !changed {
                return true;
            }
            for v in 0..n {
                roots[v] = state.uf.find(v);
            }
        }
    }

    /// The forest plus all allowed edges must still span every node.
    fn connectable(&self, state: &State) -> bool {
        let n = self.n;
        let mut uf = state.uf.clone();
        for u in 0..n {
            for v in u + 1..n {
                if state.allowed[u * n + v] {
                    uf.union(u, v);
                }
            }
        }
        let root = uf.find(0);
        (1..n).all(|v| uf.find(v) == root)
    }

    /// Allowed edges leaving the most constrained component, shortest first.
    fn branch_edges(&self, state: &mut State) -> Vec<(usize, usize)> {
        let n = self.n;
        let roots: Vec<usize> = (0..n).map(|v| state.uf.find(v)).collect();
        let mut outgoing: std::collections::BTreeMap<usize, Vec<(usize, usize)>> =
            Default::default();
        for u in 0..n {
            for v in u + 1..n {
                if state.allowed[u * n + v] {
                    outgoing.entry(roots[u]).or_default().push((u, v));
                    outgoing.entry(roots[v]).or_default().push((u, v));
                }
            }
        }
        let mut best = outgoing
            .into_values()
            .min_by_key(|opts| opts.len())
            .expect("an incomplete forest has outgoing edges");
        best.sort_by_key(|&(u, v)| (self.d(u, v), u, v));
        best
    }
}
