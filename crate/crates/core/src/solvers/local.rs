use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Meter, SearchBudget, SolveResult, SolveStats};
use crate::error::Result;
use crate::model::{
    interference_unchecked, radii_from_edges, validate_tree, Edge, NodeSet, SpanningTree,
};
use crate::unionfind::UnionFind;

/// Edge-swap local search.
///
/// A swap removes one tree edge and adds a non-tree edge reconnecting the
/// two halves. The first swap that lexicographically decreases the
/// non-increasing interference vector is taken; the search stops at a local
/// optimum or when the budget runs out. Removal candidates are scanned in an
/// order shuffled by `budget.rng_seed`.
pub fn local_search(
    nodes: &NodeSet,
    start: &SpanningTree,
    budget: &SearchBudget,
) -> Result<SolveResult> {
    validate_tree(nodes, start)?;
    let started = Instant::now();
    let mut meter = Meter::new(budget);
    let mut rng = ChaCha8Rng::seed_from_u64(budget.rng_seed);
    let n = nodes.len();
    let mut current = start.clone();
    let mut key = score(nodes, current.edges());

    'improve: loop {
        let mut removal: Vec<Edge> = current.edges().to_vec();
        removal.shuffle(&mut rng);
        for &out in &removal {
            let kept: Vec<Edge> = current
                .edges()
                .iter()
                .copied()
                .filter(|&e| e != out)
                .collect();
            let mut uf = UnionFind::new(n);
            for e in &kept {
                uf.union(e.a, e.b);
            }
            for a in 0..n {
                for b in a + 1..n {
                    let add = Edge::new(a, b);
                    if add == out || uf.find(a) == uf.find(b) {
                        continue;
                    }
                    if !meter.tick() {
                        break 'improve;
                    }
                    let mut cand = kept.clone();
                    cand.push(add);
                    let cand_key = score(nodes, &cand);
                    if cand_key < key {
                        current = SpanningTree::new(cand);
                        key = cand_key;
                        continue 'improve;
                    }
                }
            }
        }
        break;
    }
    let stats = SolveStats {
        trees_examined: meter.units(),
        nodes_pruned: 0,
        elapsed: started.elapsed(),
    };
    SolveResult::new(nodes, current, false, stats)
}

fn score(nodes: &NodeSet, edges: &[Edge]) -> Vec<usize> {
    let radii = radii_from_edges(nodes, edges);
    let mut c = interference_unchecked(nodes.points(), &radii.sq_radii).counts;
    c.sort_unstable_by(|a, b| b.cmp(a));
    c
}
