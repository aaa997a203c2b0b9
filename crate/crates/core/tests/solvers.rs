use interf_core::instances::random_node_set;
use interf_core::solvers::{
    decide_interference_le, emst_tree, local_search, minmax_bnb, minmax_exhaustive,
};
use interf_core::{max_interference, Decision, NodeSet, Point, SearchBudget, SpanningTree};

fn pts(v: &[(i64, i64)]) -> NodeSet {
    NodeSet::new(v.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
}

fn seeded_sets() -> impl Iterator<Item = NodeSet> {
    (0..120u64).map(|seed| random_node_set(4 + (seed % 4) as usize, 32, seed))
}

#[test]
fn unit_square_golden() {
    // every side path has counts (2,2,2,2); any diagonal edge covers all
    let square = pts(&[(0, 0), (4, 0), (0, 4), (4, 4)]);
    let r = minmax_exhaustive(&square).unwrap();
    assert_eq!(r.stats.trees_examined, 16);
    assert_eq!(r.objective, 2);
    assert_eq!(r.tree, SpanningTree::from_pairs(&[(0, 1), (0, 2), (1, 3)]));
}

#[test]
fn bnb_matches_exhaustive() {
    for nodes in seeded_sets() {
        let exact = minmax_exhaustive(&nodes).unwrap();
        let bnb = minmax_bnb(&nodes, &SearchBudget::unlimited()).unwrap();
        assert!(bnb.certified);
        assert_eq!(bnb.objective, exact.objective, "{:?}", nodes.points());
        assert_eq!(max_interference(&nodes, &bnb.tree).unwrap(), bnb.objective);
    }
}

#[test]
fn decision_is_sound_and_complete() {
    for nodes in seeded_sets().take(60) {
        let opt = minmax_exhaustive(&nodes).unwrap().objective;
        for k in 0..nodes.len() {
            let (d, _) = decide_interference_le(&nodes, k, &SearchBudget::unlimited()).unwrap();
            match d {
                Decision::Found(t) => {
                    assert!(k >= opt);
                    assert!(max_interference(&nodes, &t).unwrap() <= k);
                }
                Decision::None => assert!(k < opt),
                Decision::BudgetExhausted => panic!("unlimited budget exhausted"),
            }
        }
    }
}

#[test]
fn local_search_bounded_by_optimum() {
    for seed in 0..40u64 {
        let nodes = random_node_set(7, 32, 1000 + seed);
        let opt = minmax_exhaustive(&nodes).unwrap().objective;
        let start = emst_tree(&nodes);
        let before = max_interference(&nodes, &start).unwrap();
        let r = local_search(&nodes, &start, &SearchBudget::unlimited().with_seed(seed)).unwrap();
        assert!(r.objective >= opt);
        assert!(r.objective <= before);
    }
}

#[test]
fn bnb_budget_exhaustion_returns_incumbent() {
    let nodes = random_node_set(30, 32, 7);
    let r = minmax_bnb(&nodes, &SearchBudget::unlimited().with_max_trees(3)).unwrap();
    assert!(!r.certified);
    assert_eq!(max_interference(&nodes, &r.tree).unwrap(), r.objective);
}

#[test]
fn heuristics_on_gadget_instances() {
    use interf_core::reduction::build_gadgets;
    for g in interf_core::bundled_family()
        .into_iter()
        .filter(|g| g.hamilton_path().is_some())
    {
        let gs = build_gadgets(&g).unwrap();
        let heur = local_search(
            gs.nodes(),
            &emst_tree(gs.nodes()),
            &SearchBudget::unlimited(),
        )
        .unwrap();
        let exact = minmax_bnb(gs.nodes(), &SearchBudget::unlimited()).unwrap();
        assert_eq!(exact.objective, 3);
        assert!(heur.objective >= exact.objective);
    }
}
