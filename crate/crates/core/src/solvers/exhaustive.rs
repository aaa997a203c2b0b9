use std::time::Instant;

use super::{distance_matrix, SolveResult, SolveStats};
use crate::error::{Error, Result};
use crate::model::{Edge, NodeSet, SpanningTree};
use crate::unionfind::UnionFind;

/// Largest input accepted by [`minmax_exhaustive`] (9^7 trees).
pub const EXHAUSTIVE_MAX_NODES: usize = 9;

/// Enumerate every spanning tree of the complete graph and return an optimal
/// one.
///
/// Among trees with the smallest maximum interference, the winner has the
/// lexicographically smallest non-increasing count vector, then the
/// smallest sorted edge list.
pub fn minmax_exhaustive(nodes: &NodeSet) -> Result<SolveResult> {
    let n = nodes.len();
    if !(2..=EXHAUSTIVE_MAX_NODES).contains(&n) {
        return Err(Error::SizeOutOfRange {
            n,
            min: 2,
            max: EXHAUSTIVE_MAX_NODES,
            hint: "; use the branch-and-bound solver for larger inputs",
        });
    }
    let started = Instant::now();
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            edges.push(Edge::new(a, b));
        }
    }
    let mut search = Enumeration {
        nodes,
        dist: distance_matrix(nodes),
        edges,
        chosen: Vec::with_capacity(n - 1),
        best: None,
        examined: 0,
    };
    search.recurse(0, UnionFind::new(n));
    let (_, tree_edges) = search.best.expect("complete graphs have spanning trees");
    let stats = SolveStats {
        trees_examined: search.examined,
        nodes_pruned: 0,
        elapsed: started.elapsed(),
    };
    SolveResult::new(nodes, SpanningTree::new(tree_edges), true, stats)
}

struct Enumeration<'a> {
    nodes: &'a NodeSet,
    dist: Vec<u64>,
    edges: Vec<Edge>,
    chosen: Vec<Edge>,
    /// (non-increasing counts, edges) of the incumbent
    best: Option<(Vec<usize>, Vec<Edge>)>,
    examined: u64,
}

impl Enumeration<'_> {
    fn recurse(&mut self, next: usize, uf: UnionFind) {
        let n = self.nodes.len();
        let need = n - 1 - self.chosen.len();
        if need == 0 {
            self.evaluate();
            return;
        }
        if self.edges.len() - next < need {
            return;
        }
        let e = self.edges[next];
        let mut with = uf.clone();
        if with.union(e.a, e.b) {
            self.chosen.push(e);
            self.recurse(next + 1, with);
            self.chosen.pop();
        }
        self.recurse(next + 1, uf);
    }

    fn evaluate(&mut self) {
        self.examined += 1;
        let n = self.nodes.len();
        let mut radius = vec![0u64; n];
        for e in &self.chosen {
            let d = self.dist[e.a * n + e.b];
            radius[e.a] = radius[e.a].max(d);
            radius[e.b] = radius[e.b].max(d);
        }
        let mut counts = vec![0usize; n];
        for u in 0..n {
            for v in 0..n {
                if u != v && self.dist[u * n + v] <= radius[u] {
                    counts[v] += 1;
                }
            }
        }
        counts.sort_unstable_by(|a, b| b.cmp(a));
        // chosen edges are produced in sorted order, so they compare directly
        let better = match &self.best {
            None => true,
            Some((bc, be)) => (&counts, &self.chosen) < (bc, be),
        };
        if better {
            self.best = Some((counts, self.chosen.clone()));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;

    fn pts(v: &[(i64, i64)]) -> NodeSet {
        NodeSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn two_nodes() {
        let r = minmax_exhaustive(&pts(&[(0, 0), (4, 0)])).unwrap();
        assert_eq!(r.objective, 1);
        assert_eq!(r.stats.trees_examined, 1);
    }

    #[test]
    fn collinear_three() {
        let r = minmax_exhaustive(&pts(&[(0, 0), (4, 0), (8, 0)])).unwrap();
        assert_eq!(r.objective, 2);
        assert_eq!(r.stats.trees_examined, 3);
        // path (counts 1,2,1) beats either star rooted at an end (2,2,1 sorted)
        assert_eq!(r.tree, SpanningTree::from_pairs(&[(0, 1), (1, 2)]));
    }

    #[test]
    fn cayley_counts() {
        for n in 2..=6usize {
            let nodes = pts(&(0..n as i64).map(|i| (i * 5, i * i)).collect::<Vec<_>>());
            let r = minmax_exhaustive(&nodes).unwrap();
            assert_eq!(r.stats.trees_examined, (n as u64).pow(n as u32 - 2));
        }
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            minmax_exhaustive(&pts(&[(0, 0)])),
            Err(Error::SizeOutOfRange { n: 1, .. })
        ));
        let ten = pts(&(0..10).map(|i| (i, 0)).collect::<Vec<_>>());
        assert!(matches!(
            minmax_exhaustive(&ten),
            Err(Error::SizeOutOfRange { n: 10, .. })
        ));
    }
}
