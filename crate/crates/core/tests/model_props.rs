//! Randomized checks of the interference model.

use interf_core::model::{radii_from_edges, tree_profile};
use interf_core::{
    in_closed_disk, interference, radii_from_tree, symmetric_comm_graph, validate_tree, Edge,
    NodeSet, Point, SpanningTree, SquaredLength,
};
use proptest::prelude::*;
use proptest::test_runner::Config;

/// Distinct points plus a random spanning tree (each node after the first
/// attaches to an earlier one) and a random edge order.
fn instance() -> impl Strategy<Value = (NodeSet, Vec<Edge>)> {
    (2usize..=10)
        .prop_flat_map(|n| {
            (
                proptest::collection::btree_set((0i64..=32, 0i64..=32), n),
                proptest::collection::vec(any::<proptest::sample::Index>(), n),
            )
        })
        .prop_flat_map(|(pts, parents)| {
            let n = pts.len();
            let edges: Vec<Edge> = (1..n).map(|v| Edge::new(v, parents[v].index(v))).collect();
            let points: Vec<Point> = pts.into_iter().map(|(x, y)| Point::new(x, y)).collect();
            (
                Just(NodeSet::new(points).unwrap()),
                Just(edges).prop_shuffle(),
            )
        })
}

proptest! {
    #![proptest_config(Config::with_cases(1000))]

    #[test]
    fn tree_edges_are_symmetric_links((nodes, edges) in instance()) {
        let tree = SpanningTree::new(edges);
        prop_assert!(validate_tree(&nodes, &tree).is_ok());
        let radii = radii_from_tree(&nodes, &tree).unwrap();
        let comm = symmetric_comm_graph(&nodes, &radii).unwrap();
        for e in tree.edges() {
            prop_assert!(comm.contains(e), "tree edge {} missing", e);
        }
    }

    #[test]
    fn forest_extension_is_monotone((nodes, edges) in instance(), cut in any::<proptest::sample::Index>()) {
        let k = cut.index(edges.len() + 1);
        let small = radii_from_edges(&nodes, &edges[..k]);
        let large = radii_from_edges(&nodes, &edges);
        let ps = interference(&nodes, &small).unwrap();
        let pl = interference(&nodes, &large).unwrap();
        for v in 0..nodes.len() {
            prop_assert!(small.get(v) <= large.get(v));
            prop_assert!(ps.counts[v] <= pl.counts[v]);
        }
    }

    #[test]
    fn translation_invariant((nodes, edges) in instance(), dx in -1000i64..1000, dy in -1000i64..1000) {
        let tree = SpanningTree::new(edges);
        let moved = nodes.translated(dx, dy);
        prop_assert_eq!(radii_from_tree(&nodes, &tree).unwrap(), radii_from_tree(&moved, &tree).unwrap());
        prop_assert_eq!(tree_profile(&nodes, &tree).unwrap(), tree_profile(&moved, &tree).unwrap());
    }

    #[test]
    fn interference_bounds((nodes, edges) in instance()) {
        let n = nodes.len();
        let p = tree_profile(&nodes, &SpanningTree::new(edges)).unwrap();
        prop_assert!(p.counts.iter().all(|&c| c < n));
        prop_assert!(p.max >= 1);
        prop_assert_eq!(p.max, *p.counts.iter().max().unwrap());
    }

    /// Partners sit at squared distance 4 and a partnered satellite has
    /// squared radius 4: the partner is on the boundary and counts.
    #[test]
    fn partner_on_boundary_is_inside(x in -500i64..500, y in -500i64..500, dir in 0usize..4) {
        let (dx, dy) = [(1, 0), (-1, 0), (0, 1), (0, -1)][dir];
        let sat = Point::new(x, y);
        let partner = Point::new(x + 2 * dx, y + 2 * dy);
        prop_assert!(in_closed_disk(sat, SquaredLength(4), partner));
        prop_assert!(!in_closed_disk(sat, SquaredLength(3), partner));
        let nodes = NodeSet::new(vec![sat, partner]).unwrap();
        let p = tree_profile(&nodes, &SpanningTree::from_pairs(&[(0, 1)])).unwrap();
        prop_assert_eq!(p.counts, vec![1, 1]);
    }
}
