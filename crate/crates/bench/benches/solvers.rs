use criterion::{black_box, criterion_group, criterion_main, Criterion};
use interf_core::instances::random_node_set;
use interf_core::reduction::build_gadgets;
use interf_core::solvers::{
    decide_interference_le, emst_tree, local_search, minmax_bnb, minmax_exhaustive,
};
use interf_core::{GridGraph, SearchBudget};

fn exact(c: &mut Criterion) {
    let nodes = random_node_set(7, 32, 3);
    c.bench_function("exhaustive n=7", |b| {
        b.iter(|| minmax_exhaustive(black_box(&nodes)).unwrap())
    });
    c.bench_function("bnb n=7", |b| {
        b.iter(|| minmax_bnb(black_box(&nodes), &SearchBudget::unlimited()).unwrap())
    });
}

fn reduction(c: &mut Criterion) {
    let tshape = build_gadgets(&GridGraph::from_coords(&[(0, 0), (1, 0), (2, 0), (1, 1)])).unwrap();
    c.bench_function("decide k=3 tshape", |b| {
        b.iter(|| {
            decide_interference_le(black_box(tshape.nodes()), 3, &SearchBudget::unlimited())
                .unwrap()
        })
    });
    let rect = build_gadgets(&GridGraph::from_coords(&[
        (0, 0),
        (1, 0),
        (2, 0),
        (0, 1),
        (1, 1),
        (2, 1),
    ]))
    .unwrap();
    c.bench_function("decide k=3 2x3", |b| {
        b.iter(|| {
            decide_interference_le(black_box(rect.nodes()), 3, &SearchBudget::unlimited()).unwrap()
        })
    });
}

fn heuristic(c: &mut Criterion) {
    let nodes = random_node_set(30, 64, 7);
    let start = emst_tree(&nodes);
    c.bench_function("local search n=30", |b| {
        b.iter(|| local_search(black_box(&nodes), &start, &SearchBudget::unlimited()).unwrap())
    });
}

criterion_group!(benches, exact, reduction, heuristic);
criterion_main!(benches);
