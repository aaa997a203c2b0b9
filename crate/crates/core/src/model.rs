//! The receiver-interference model over spanning trees.
//!
//! A tree assigns every node the squared distance to its furthest tree
//! neighbor as its transmission radius. The interference of a node is the
//! number of other nodes whose closed disk contains it.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::geometry::{in_closed_disk, sq_dist, Point, SquaredLength};
use crate::grid::GridVertex;
use crate::unionfind::UnionFind;

/// Unordered pair of node indices, stored with `a <= b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
}

impl Edge {
    pub fn new(u: usize, v: usize) -> Self {
        Edge {
            a: u.min(v),
            b: u.max(v),
        }
    }

    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Center,
    Satellite,
}

/// Gadget role of a node produced by the grid reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Annotation {
    pub role: Role,
    /// Grid vertex whose gadget this node belongs to.
    pub owner: GridVertex,
    /// Index of the partner satellite on the same grid edge, if any.
    pub partner: Option<usize>,
}

/// An ordered set of pairwise distinct points, optionally annotated with
/// gadget roles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeSet {
    points: Vec<Point>,
    annotations: Option<Vec<Annotation>>,
}

impl NodeSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by_key(|&i| points[i]);
        for w in order.windows(2) {
            if points[w[0]] == points[w[1]] {
                let (i, j) = (w[0].min(w[1]), w[0].max(w[1]));
                return Err(Error::DuplicatePoint(points[i], i, j));
            }
        }
        Ok(NodeSet {
            points,
            annotations: None,
        })
    }

    pub fn with_annotations(points: Vec<Point>, annotations: Vec<Annotation>) -> Result<Self> {
        let mut set = NodeSet::new(points)?;
        check_annotations(&set.points, &annotations)?;
        set.annotations = Some(annotations);
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    pub fn annotations(&self) -> Option<&[Annotation]> {
        self.annotations.as_deref()
    }

    pub fn edge_sq_len(&self, e: Edge) -> SquaredLength {
        sq_dist(self.points[e.a], self.points[e.b])
    }

    /// The same node set shifted by an integer vector.
    pub fn translated(&self, dx: i64, dy: i64) -> NodeSet {
        NodeSet {
            points: self.points.iter().map(|p| p.translate(dx, dy)).collect(),
            annotations: self.annotations.clone(),
        }
    }
}

fn check_annotations(points: &[Point], anns: &[Annotation]) -> Result<()> {
    let bad = |msg: String| Err(Error::InvalidAnnotations(msg));
    if anns.len() != points.len() {
        return bad(format!(
            "{} annotations for {} nodes",
            anns.len(),
            points.len()
        ));
    }
    for (i, ann) in anns.iter().enumerate() {
        let Some(j) = ann.partner else { continue };
        if ann.role != Role::Satellite {
            return bad(format!("node {i} is a center but has a partner"));
        }
        if j >= anns.len() || j == i {
            return bad(format!("node {i} has invalid partner index {j}"));
        }
        let other = &anns[j];
        if other.partner != Some(i) || other.role != Role::Satellite {
            return bad(format!("partner link {i} -> {j} is not mutual"));
        }
        if !ann.owner.is_adjacent(other.owner) {
            return bad(format!(
                "partners {i} and {j} belong to non-adjacent gadgets"
            ));
        }
        if sq_dist(points[i], points[j]) != SquaredLength(4) {
            return bad(format!(
                "partners {i} and {j} are not at squared distance 4"
            ));
        }
        // both partners sit on the segment between the two centers
        let mid_nodes = points[i] + points[j];
        let mid_owners = ann.owner.to_point() + other.owner.to_point();
        if mid_nodes != mid_owners {
            return bad(format!(
                "partners {i} and {j} do not lie on their grid edge"
            ));
        }
    }
    Ok(())
}

/// Why an edge list fails to be a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TreeViolation {
    #[error("edge {0} references a node outside 0..{1}")]
    IndexOutOfRange(Edge, usize),
    #[error("self-loop at node {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}")]
    DuplicateEdge(Edge),
    #[error("wrong edge count: expected {expected}, got {got}")]
    WrongEdgeCount { expected: usize, got: usize },
    #[error("edge {0} closes a cycle")]
    Cycle(Edge),
    #[error("tree is disconnected")]
    Disconnected,
}

/// Edge list over a node set; kept sorted so that equal trees compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpanningTree {
    edges: Vec<Edge>,
}

impl SpanningTree {
    pub fn new(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        SpanningTree { edges }
    }

    pub fn from_pairs(pairs: &[(usize, usize)]) -> Self {
        SpanningTree::new(pairs.iter().map(|&(u, v)| Edge::new(u, v)))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

pub fn validate_tree(nodes: &NodeSet, tree: &SpanningTree) -> Result<(), TreeViolation> {
    let n = nodes.len();
    for (i, &e) in tree.edges.iter().enumerate() {
        if e.b >= n {
            return Err(TreeViolation::IndexOutOfRange(e, n));
        }
        if e.a == e.b {
            return Err(TreeViolation::SelfLoop(e.a));
        }
        if i > 0 && tree.edges[i - 1] == e {
            return Err(TreeViolation::DuplicateEdge(e));
        }
    }
    if tree.len() + 1 != n {
        return Err(TreeViolation::WrongEdgeCount {
            expected: n.saturating_sub(1),
            got: tree.len(),
        });
    }
    let mut uf = UnionFind::new(n);
    for &e in &tree.edges {
        if !uf.union(e.a, e.b) {
            return Err(TreeViolation::Cycle(e));
        }
    }
    // n - 1 acyclic edges on n nodes are always connected; kept for clarity
    // of the report should the count check above ever change.
    let root = uf.find(0);
    if (1..n).any(|v| uf.find(v) != root) {
        return Err(TreeViolation::Disconnected);
    }
    Ok(())
}

/// Per-node squared transmission radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusAssignment {
    pub sq_radii: Vec<SquaredLength>,
}

impl RadiusAssignment {
    pub fn get(&self, v: usize) -> SquaredLength {
        self.sq_radii[v]
    }

    pub fn len(&self) -> usize {
        self.sq_radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sq_radii.is_empty()
    }
}

/// Radii induced by an arbitrary edge list (a partial forest is fine);
/// nodes without incident edges get radius 0. Indices must be in range.
pub fn radii_from_edges(nodes: &NodeSet, edges: &[Edge]) -> RadiusAssignment {
    let mut sq_radii = vec![SquaredLength::ZERO; nodes.len()];
    for &e in edges {
        let d = nodes.edge_sq_len(e);
        sq_radii[e.a] = sq_radii[e.a].max(d);
        sq_radii[e.b] = sq_radii[e.b].max(d);
    }
    RadiusAssignment { sq_radii }
}

pub fn radii_from_tree(nodes: &NodeSet, tree: &SpanningTree) -> Result<RadiusAssignment> {
    validate_tree(nodes, tree)?;
    Ok(radii_from_edges(nodes, tree.edges()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterferenceProfile {
    pub counts: Vec<usize>,
    pub max: usize,
}

impl InterferenceProfile {
    /// Counts in non-increasing order; the lexicographic tie-break key.
    pub fn sorted_desc(&self) -> Vec<usize> {
        let mut v = self.counts.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// All-pairs in-circle evaluation.
pub fn interference(nodes: &NodeSet, radii: &RadiusAssignment) -> Result<InterferenceProfile> {
    if radii.len() != nodes.len() {
        return Err(Error::LengthMismatch {
            expected: nodes.len(),
            got: radii.len(),
        });
    }
    Ok(interference_unchecked(nodes.points(), &radii.sq_radii))
}

pub(crate) fn interference_unchecked(
    points: &[Point],
    sq_radii: &[SquaredLength],
) -> InterferenceProfile {
    let n = points.len();
    let mut counts = vec![0usize; n];
    for u in 0..n {
        for v in 0..n {
            if u != v && in_closed_disk(points[u], sq_radii[u], points[v]) {
                counts[v] += 1;
            }
        }
    }
    let max = counts.iter().copied().max().unwrap_or(0);
    InterferenceProfile { counts, max }
}

pub fn max_interference(nodes: &NodeSet, tree: &SpanningTree) -> Result<usize> {
    let radii = radii_from_tree(nodes, tree)?;
    Ok(interference(nodes, &radii)?.max)
}

/// Interference profile of a tree, after validating it.
pub fn tree_profile(nodes: &NodeSet, tree: &SpanningTree) -> Result<InterferenceProfile> {
    let radii = radii_from_tree(nodes, tree)?;
    interference(nodes, &radii)
}

/// Pairs of nodes that lie in each other's transmission disks.
pub fn symmetric_comm_graph(nodes: &NodeSet, radii: &RadiusAssignment) -> Result<Vec<Edge>> {
    if radii.len() != nodes.len() {
        return Err(Error::LengthMismatch {
            expected: nodes.len(),
            got: radii.len(),
        });
    }
    let n = nodes.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let d = sq_dist(nodes.point(u), nodes.point(v));
            if d <= radii.get(u) && d <= radii.get(v) {
                edges.push(Edge::new(u, v));
            }
        }
    }
    Ok(edges)
}
