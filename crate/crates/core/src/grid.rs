//! Vertex-induced grid graphs and an exact Hamilton path oracle.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::Point;

/// A vertex of the integer grid, in grid units.
///
/// Ordered row-major: by `y`, then by `x`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridVertex {
    pub x: i64,
    pub y: i64,
}

impl GridVertex {
    pub const fn new(x: i64, y: i64) -> Self {
        GridVertex { x, y }
    }

    /// Position of this vertex in quarter-units.
    pub fn to_point(self) -> Point {
        Point::new(4 * self.x, 4 * self.y)
    }

    pub fn is_adjacent(self, other: GridVertex) -> bool {
        self.x.abs_diff(other.x) + self.y.abs_diff(other.y) == 1
    }

    pub fn neighbors(self) -> [GridVertex; 4] {
        [
            GridVertex::new(self.x + 1, self.y),
            GridVertex::new(self.x - 1, self.y),
            GridVertex::new(self.x, self.y + 1),
            GridVertex::new(self.x, self.y - 1),
        ]
    }
}

impl Ord for GridVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x).cmp(&(other.y, other.x))
    }
}

impl PartialOrd for GridVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GridVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// A finite vertex set in Z x Z; edges join vertices at unit distance.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GridGraph {
    vertices: BTreeSet<GridVertex>,
}

pub type VertexPath = Vec<GridVertex>;

impl GridGraph {
    pub fn new(vertices: impl IntoIterator<Item = GridVertex>) -> Self {
        GridGraph {
            vertices: vertices.into_iter().collect(),
        }
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Self {
        GridGraph::new(coords.iter().map(|&(x, y)| GridVertex::new(x, y)))
    }

    /// Vertices in row-major order.
    pub fn vertices(&self) -> impl Iterator<Item = GridVertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: GridVertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn degree(&self, v: GridVertex) -> usize {
        v.neighbors().iter().filter(|w| self.contains(**w)).count()
    }

    /// All unit-distance pairs, each with the row-major smaller vertex first.
    pub fn induced_edges(&self) -> Vec<(GridVertex, GridVertex)> {
        let mut edges = Vec::new();
        for v in self.vertices() {
            for w in [GridVertex::new(v.x + 1, v.y), GridVertex::new(v.x, v.y + 1)] {
                if self.contains(w) {
                    edges.push((v, w));
                }
            }
        }
        edges.sort();
        edges
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// A singleton graph counts as having an isolated vertex.
    pub fn has_isolated_vertex(&self) -> bool {
        self.vertices().any(|v| self.degree(v) == 0)
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in v.neighbors() {
                if self.contains(w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.len()
    }

    pub fn translated(&self, dx: i64, dy: i64) -> GridGraph {
        GridGraph::new(self.vertices().map(|v| GridVertex::new(v.x + dx, v.y + dy)))
    }

    /// Translate so that the minimum x and minimum y are both zero.
    pub fn normalized(&self) -> GridGraph {
        let min_x = self.vertices().map(|v| v.x).min().unwrap_or(0);
        let min_y = self.vertices().map(|v| v.y).min().unwrap_or(0);
        self.translated(-min_x, -min_y)
    }

    /// Exhaustive backtracking search for a Hamilton path.
    ///
    /// Start vertices are tried in row-major order and neighbors are
    /// extended in row-major order, so the result is deterministic.
    pub fn hamilton_path(&self) -> Option<VertexPath> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        let verts: Vec<GridVertex> = self.vertices().collect();
        let adj: Vec<Vec<usize>> = verts
            .iter()
            .map(|v| {
                let mut nb: Vec<usize> = v
                    .neighbors()
                    .iter()
                    .filter_map(|w| verts.binary_search(w).ok())
                    .collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        let mut search = PathSearch {
            adj: &adj,
            visited: vec![false; n],
            path: Vec::with_capacity(n),
        };
        for start in 0..n {
            search.visited[start] = true;
            search.path.push(start);
            if search.extend() {
                return Some(search.path.iter().map(|&i| verts[i]).collect());
            }
            search.path.pop();
            search.visited[start] = false;
        }
        None
    }
}

struct PathSearch<'a> {
    adj: &'a [Vec<usize>],
    visited: Vec<bool>,
    path: Vec<usize>,
}

impl PathSearch<'_> {
    fn extend(&mut self) -> bool {
        if self.path.len() == self.adj.len() {
            return true;
        }
        let cur = *self.path.last().expect("path is never empty here");
        if !self.feasible(cur) {
            return false;
        }
        for i in 0..self.adj[cur].len() {
            let next = self.adj[cur][i];
            if self.visited[next] {
                continue;
            }
            self.visited[next] = true;
            self.path.push(next);
            if self.extend() {
                return true;
            }
            self.path.pop();
            self.visited[next] = false;
        }
        false
    }

    /// Necessary conditions for completing the path from `cur`: the
    /// unvisited vertices are reachable from `cur` through unvisited
    /// vertices, and at most one of them is a forced dead end.
    fn feasible(&self, cur: usize) -> bool {
        let n = self.adj.len();
        let mut dead_ends = 0;
        for v in 0..n {
            if self.visited[v] {
                continue;
            }
            let touches_cur = self.adj[v].contains(&cur);
            let free = self.adj[v].iter().filter(|&&w| !self.visited[w]).count();
            if free == 0 && !touches_cur {
                return false;
            }
            if free == 1 && !touches_cur {
                dead_ends += 1;
            }
        }
        if dead_ends > 1 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![cur];
        seen[cur] = true;
        let mut reached = 0;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !self.visited[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n - self.path.len()
    }
}

/// Independent check that `path` is a Hamilton path of `g`.
pub fn verify_hamilton_path(g: &GridGraph, path: &[GridVertex]) -> Result<(), String> {
    if path.len() != g.len() {
        return Err(format!(
            "path has {} vertices, graph has {}",
            path.len(),
            g.len()
        ));
    }
    let mut seen = BTreeSet::new();
    for &v in path {
        if !g.contains(v) {
            return Err(format!("vertex {v} is not in the graph"));
        }
        if !seen.insert(v) {
            return Err(format!("vertex {v} repeats"));
        }
    }
    for w in path.windows(2) {
        if !w[0].is_adjacent(w[1]) {
            return Err(format!("{} and {} are not adjacent", w[0], w[1]));
        }
    }
    Ok(())
}

/// The bundled family of reducible grid graphs: every connected vertex set
/// of size 2 to 5 inside a 3 x 3 window with maximum degree at most 3, up to
/// translation, plus the paths 1 x k for k <= 6, the 2 x 2 square, an
/// L-shape and the 2 x 3 rectangle. Sorted and deduplicated.
pub fn bundled_family() -> Vec<GridGraph> {
    let mut family = BTreeSet::new();
    let window: Vec<GridVertex> = (0..3)
        .flat_map(|y| (0..3).map(move |x| GridVertex::new(x, y)))
        .collect();
    for mask in 0u32..(1 << window.len()) {
        let size = mask.count_ones() as usize;
        if !(2..=5).contains(&size) {
            continue;
        }
        let g = GridGraph::new(
            (0..window.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| window[i]),
        );
        if g.is_connected() && g.max_degree() <= 3 {
            family.insert(g.normalized());
        }
    }
    for k in 2..=6 {
        family.insert(GridGraph::new((0..k).map(|x| GridVertex::new(x, 0))));
    }
    family.insert(GridGraph::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]));
    family.insert(GridGraph::from_coords(&[(0, 0), (0, 1), (0, 2), (1, 0)]));
    family.insert(GridGraph::from_coords(&[
        (0, 0),
        (1, 0),
        (2, 0),
        (0, 1),
        (1, 1),
        (2, 1),
    ]));
    family.into_iter().collect()
}

impl PartialOrd for GridGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GridGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), &self.vertices).cmp(&(other.len(), &other.vertices))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> GridVertex {
        GridVertex::new(x, y)
    }

    #[test]
    fn induced_edges_examples() {
        let g = GridGraph::from_coords(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(
            g.induced_edges(),
            vec![(v(0, 0), v(1, 0)), (v(0, 0), v(0, 1))]
        );
        assert!(GridGraph::from_coords(&[(0, 0), (2, 0)])
            .induced_edges()
            .is_empty());
        assert!(GridGraph::from_coords(&[(0, 0)]).induced_edges().is_empty());
    }

    #[test]
    fn max_degree_examples() {
        assert_eq!(
            GridGraph::from_coords(&[(0, 0), (1, 0), (2, 0)]).max_degree(),
            2
        );
        let plus = GridGraph::from_coords(&[(0, 0), (1, 0), (-1, 0), (0, 1), (0, -1)]);
        assert_eq!(plus.max_degree(), 4);
        assert_eq!(GridGraph::from_coords(&[(0, 0)]).max_degree(), 0);
        assert_eq!(GridGraph::default().max_degree(), 0);
    }

    #[test]
    fn isolated_vertex_examples() {
        assert!(!GridGraph::from_coords(&[(0, 0), (1, 0)]).has_isolated_vertex());
        assert!(GridGraph::from_coords(&[(0, 0), (5, 5)]).has_isolated_vertex());
        assert!(!GridGraph::default().has_isolated_vertex());
        assert!(GridGraph::from_coords(&[(0, 0)]).has_isolated_vertex());
    }

    #[test]
    fn hamilton_examples() {
        let square = GridGraph::from_coords(&[(0, 0), (1, 0), (0, 1), (1, 1)]);
        let p = square.hamilton_path().unwrap();
        assert_eq!(p, vec![v(0, 0), v(1, 0), v(1, 1), v(0, 1)]);
        verify_hamilton_path(&square, &p).unwrap();

        let t = GridGraph::from_coords(&[(0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(t.hamilton_path(), None);

        let single = GridGraph::from_coords(&[(0, 0)]);
        assert_eq!(single.hamilton_path(), Some(vec![v(0, 0)]));
        assert_eq!(GridGraph::default().hamilton_path(), None);
    }

    #[test]
    fn disconnected_has_no_path() {
        let g = GridGraph::from_coords(&[(0, 0), (1, 0), (3, 0), (4, 0)]);
        assert_eq!(g.hamilton_path(), None);
    }

    #[test]
    fn verify_rejects_bad_paths() {
        let g = GridGraph::from_coords(&[(0, 0), (1, 0), (2, 0)]);
        assert!(verify_hamilton_path(&g, &[v(0, 0), v(2, 0), v(1, 0)]).is_err());
        assert!(verify_hamilton_path(&g, &[v(0, 0), v(1, 0)]).is_err());
        assert!(verify_hamilton_path(&g, &[v(0, 0), v(1, 0), v(0, 0)]).is_err());
        assert!(verify_hamilton_path(&g, &[v(2, 0), v(1, 0), v(0, 0)]).is_ok());
    }

    #[test]
    fn row_major_order() {
        let g = GridGraph::from_coords(&[(1, 0), (0, 1), (0, 0)]);
        let order: Vec<_> = g.vertices().collect();
        assert_eq!(order, vec![v(0, 0), v(1, 0), v(0, 1)]);
    }
}
