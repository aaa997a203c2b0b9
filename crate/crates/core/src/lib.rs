//! Receiver-interference topology control on exact planar node sets.
//!
//! Each node of a spanning tree transmits with a radius equal to the distance
//! to its furthest tree neighbor; the interference at a node is the number of
//! *other* nodes whose closed transmission disk contains it. This crate
//! evaluates that model, solves the min-max interference spanning tree problem
//! (exactly for small inputs, heuristically beyond), and implements the
//! reduction from Hamilton paths in grid graphs of maximum degree 3 to the
//! "interference at most 3" decision problem, including executable versions
//! of the constructions that prove it correct.
//!
//! All geometry is integer. Coordinates are stored in *quarter-units*: a grid
//! vertex `(a, b)` sits at `Point::new(4 * a, 4 * b)`, and distances are only
//! ever compared squared.

pub mod error;
pub mod geometry;
pub mod grid;
pub mod instances;
pub mod model;
pub mod reduction;
pub mod solvers;
mod unionfind;

pub use error::{Error, Result};
pub use geometry::{in_closed_disk, sq_dist, Point, SquaredLength};
pub use grid::{bundled_family, verify_hamilton_path, GridGraph, GridVertex, VertexPath};
pub use model::{
    interference, max_interference, radii_from_tree, symmetric_comm_graph, validate_tree,
    Annotation, Edge, InterferenceProfile, NodeSet, RadiusAssignment, Role, SpanningTree,
    TreeViolation,
};
pub use reduction::GadgetSet;
pub use solvers::{Decision, SearchBudget, SolveResult, SolveStats};
