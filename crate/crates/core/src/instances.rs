//! Seeded instance generators shared by tests, benches and the CLI.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::Point;
use crate::model::NodeSet;

/// `n` distinct points with coordinates uniform in `[0, max_coord]`.
///
/// Panics if the square holds fewer than `n` lattice points.
pub fn random_node_set(n: usize, max_coord: i64, seed: u64) -> NodeSet {
    let side = (max_coord + 1) as usize;
    assert!(
        n >= 1 && n <= side * side,
        "cannot place {n} distinct points"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut points = Vec::with_capacity(n);
    while points.len() < n {
        let p = Point::new(rng.gen_range(0..=max_coord), rng.gen_range(0..=max_coord));
        if seen.insert(p) {
            points.push(p);
        }
    }
    NodeSet::new(points).expect("points are distinct and non-empty")
}
