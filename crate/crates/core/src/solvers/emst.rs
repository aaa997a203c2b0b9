use crate::model::{Edge, NodeSet, SpanningTree};
use crate::unionfind::UnionFind;

/// Euclidean minimum spanning tree (Kruskal); equal lengths are taken in
/// index-pair order.
pub fn emst_tree(nodes: &NodeSet) -> SpanningTree {
    let n = nodes.len();
    let mut edges: Vec<(u64, Edge)> = Vec::with_capacity(n * (n - 1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let e = Edge::new(a, b);
            edges.push((nodes.edge_sq_len(e).value(), e));
        }
    }
    edges.sort_unstable();
    let mut uf = UnionFind::new(n);
    let mut tree = Vec::with_capacity(n.saturating_sub(1));
    for (_, e) in edges {
        if uf.union(e.a, e.b) {
            tree.push(e);
            if tree.len() + 1 == n {
                break;
            }
        }
    }
    SpanningTree::new(tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Point;
    use crate::grid::GridGraph;
    use crate::model::validate_tree;
    use crate::reduction::build_gadgets;

    #[test]
    fn collinear_and_pair() {
        let three =
            NodeSet::new(vec![Point::new(0, 0), Point::new(4, 0), Point::new(8, 0)]).unwrap();
        assert_eq!(
            emst_tree(&three),
            SpanningTree::from_pairs(&[(0, 1), (1, 2)])
        );
        let two = NodeSet::new(vec![Point::new(0, 0), Point::new(3, 7)]).unwrap();
        assert_eq!(emst_tree(&two), SpanningTree::from_pairs(&[(0, 1)]));
    }

    #[test]
    fn gadget_emst_uses_short_edges() {
        let gs = build_gadgets(&GridGraph::from_coords(&[(0, 0), (1, 0)])).unwrap();
        let t = emst_tree(gs.nodes());
        validate_tree(gs.nodes(), &t).unwrap();
        for &e in t.edges() {
            let d = gs.nodes().edge_sq_len(e).value();
            assert!(d == 1 || d == 4, "edge {e} has squared length {d}");
        }
    }
}
