//! Solvers for the min-max interference spanning tree problem.
//!
//! - [`minmax_exhaustive`]: enumerates every spanning tree of the complete
//!   graph; the ground truth for small inputs.
//! - [`decide_interference_le`]: branch and bound for "is there a tree with
//!   interference at most k".
//! - [`minmax_bnb`]: ascending sweep over k using the decision procedure.
//! - [`emst_tree`] and [`local_search`]: heuristics for larger inputs.

mod bnb;
mod emst;
mod exhaustive;
mod local;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{tree_profile, NodeSet, SpanningTree};

pub use bnb::{decide_interference_le, minmax_bnb};
pub use emst::emst_tree;
pub use exhaustive::{minmax_exhaustive, EXHAUSTIVE_MAX_NODES};
pub use local::local_search;

/// Limits for the search-based solvers.
///
/// `max_trees` caps the number of work units: complete trees evaluated by
/// [`local_search`], search nodes expanded by the branch and bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_trees: Option<u64>,
    pub time_limit: Option<Duration>,
    pub rng_seed: u64,
}

impl SearchBudget {
    pub fn unlimited() -> Self {
        SearchBudget::default()
    }

    pub fn with_max_trees(mut self, n: u64) -> Self {
        self.max_trees = Some(n);
        self
    }

    pub fn with_time_limit(mut self, d: Duration) -> Self {
        self.time_limit = Some(d);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub trees_examined: u64,
    pub nodes_pruned: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl SolveStats {
    fn absorb(&mut self, other: &SolveStats) {
        self.trees_examined += other.trees_examined;
        self.nodes_pruned += other.nodes_pruned;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub tree: SpanningTree,
    /// Maximum interference of `tree`, recomputed from scratch.
    pub objective: usize,
    /// True when `objective` is proven optimal.
    pub certified: bool,
    pub stats: SolveStats,
}

impl SolveResult {
    pub(crate) fn new(
        nodes: &NodeSet,
        tree: SpanningTree,
        certified: bool,
        stats: SolveStats,
    ) -> Result<Self> {
        let objective = tree_profile(nodes, &tree)?.max;
        Ok(SolveResult {
            tree,
            objective,
            certified,
            stats,
        })
    }
}

/// Outcome of the interference decision problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Found(SpanningTree),
    /// Exhaustively refuted: no spanning tree reaches the bound.
    None,
    BudgetExhausted,
}

/// Tracks work units and wall-clock time against a [`SearchBudget`].
#[derive(Debug)]
pub(crate) struct Meter {
    started: Instant,
    deadline: Option<Instant>,
    max_units: Option<u64>,
    units: u64,
}

impl Meter {
    pub(crate) fn new(budget: &SearchBudget) -> Self {
        let started = Instant::now();
        Meter {
            started,
            deadline: budget.time_limit.map(|d| started + d),
            max_units: budget.max_trees,
            units: 0,
        }
    }

    /// Charge one unit; false once the budget is spent.
    pub(crate) fn tick(&mut self) -> bool {
        if self.max_units.is_some_and(|m| self.units >= m) {
            return false;
        }
        self.units += 1;
        if let Some(deadline) = self.deadline {
            if self.units % 64 == 1 && Instant::now() >= deadline {
                return false;
            }
        }
        true
    }

    pub(crate) fn units(&self) -> u64 {
        self.units
    }

    pub(crate) fn elapsed(&self) -> Duration {
        self.started.elapsed()
    }
}

/// Square distance matrix, row-major.
pub(crate) fn distance_matrix(nodes: &NodeSet) -> Vec<u64> {
    let n = nodes.len();
    let mut d = vec![0u64; n * n];
    for u in 0..n {
        for v in 0..n {
            d[u * n + v] = crate::geometry::sq_dist(nodes.point(u), nodes.point(v)).value();
        }
    }
    d
}
