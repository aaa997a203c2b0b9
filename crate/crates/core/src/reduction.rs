//! Grid graph to node set reduction and its constructive lemmas.
//!
//! Every grid vertex `x` becomes a gadget: a center node at `x` and three
//! satellites at distinct offsets from `x ± (1/4, 0)`, `x ± (0, 1/4)`, such
//! that every grid edge at `x` carries one of them. The two satellites on a
//! common grid edge are partners.
//!
//! A Hamilton path yields a tree of interference exactly 3
//! ([`tree_from_hamilton_path`]); a tree of interference at most 3 joins
//! gadgets only through partners ([`cross_gadget_violations`] is empty) and
//! contracts to a Hamilton path ([`hamilton_from_tree`]).

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{sq_dist, Point, SquaredLength};
use crate::grid::{verify_hamilton_path, GridGraph, GridVertex, VertexPath};
use crate::model::{tree_profile, validate_tree, Annotation, Edge, NodeSet, Role, SpanningTree};
use crate::unionfind::UnionFind;

/// Satellite offset order used both for mandatory satellites and for
/// filling free slots: +x, -x, +y, -y.
pub const OFFSETS: [(i64, i64); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];

#[derive(Clone, Debug)]
pub struct GadgetSet {
    nodes: NodeSet,
    grid: GridGraph,
    vertices: Vec<GridVertex>,
    centers: Vec<usize>,
    satellites: Vec<[usize; 3]>,
    gadget_of: Vec<usize>,
}

impl GadgetSet {
    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn grid(&self) -> &GridGraph {
        &self.grid
    }

    pub fn gadget_count(&self) -> usize {
        self.vertices.len()
    }

    /// Gadget index of a node; gadgets are numbered in row-major vertex order.
    pub fn gadget_of(&self, node: usize) -> usize {
        self.gadget_of[node]
    }

    pub fn vertex(&self, gadget: usize) -> GridVertex {
        self.vertices[gadget]
    }

    pub fn gadget_index(&self, v: GridVertex) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn center(&self, gadget: usize) -> usize {
        self.centers[gadget]
    }

    pub fn satellites(&self, gadget: usize) -> [usize; 3] {
        self.satellites[gadget]
    }

    pub fn partner(&self, node: usize) -> Option<usize> {
        self.annotations()[node].partner
    }

    pub fn is_partner_edge(&self, e: Edge) -> bool {
        self.partner(e.a) == Some(e.b)
    }

    /// The partner pair on the grid edge `{v, w}`, if that edge exists.
    pub fn partner_edge(&self, v: GridVertex, w: GridVertex) -> Option<Edge> {
        let g = self.gadget_index(v)?;
        self.satellites[g].iter().find_map(|&s| {
            let p = self.partner(s)?;
            (self.vertices[self.gadget_of[p]] == w).then(|| Edge::new(s, p))
        })
    }

    fn annotations(&self) -> &[Annotation] {
        self.nodes.annotations().expect("gadget sets are annotated")
    }

    /// Recover the gadget structure from an annotated node set, checking
    /// every gadget invariant.
    pub fn from_annotated(nodes: NodeSet) -> Result<GadgetSet> {
        let anns = nodes
            .annotations()
            .ok_or(Error::MissingAnnotations)?
            .to_vec();
        let bad = |msg: String| Err(Error::InvalidAnnotations(msg));

        let mut members: BTreeMap<GridVertex, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
        for (i, a) in anns.iter().enumerate() {
            let entry = members.entry(a.owner).or_default();
            match a.role {
                Role::Center => entry.0.push(i),
                Role::Satellite => entry.1.push(i),
            }
        }
        let grid = GridGraph::new(members.keys().copied());
        let vertices: Vec<GridVertex> = grid.vertices().collect();
        let mut centers = Vec::with_capacity(vertices.len());
        let mut satellites = Vec::with_capacity(vertices.len());
        let mut gadget_of = vec![0; nodes.len()];
        for (g, (v, (cs, ss))) in members.iter().enumerate() {
            if cs.len() != 1 || ss.len() != 3 {
                return bad(format!(
                    "gadget {v} has {} centers and {} satellites",
                    cs.len(),
                    ss.len()
                ));
            }
            if nodes.point(cs[0]) != v.to_point() {
                return bad(format!("center of gadget {v} is not at its grid position"));
            }
            for &s in ss {
                if sq_dist(nodes.point(s), v.to_point()) != SquaredLength(1) {
                    return bad(format!(
                        "satellite {s} is not adjacent to the center of {v}"
                    ));
                }
            }
            gadget_of[cs[0]] = g;
            for &s in ss {
                gadget_of[s] = g;
            }
            centers.push(cs[0]);
            satellites.push([ss[0], ss[1], ss[2]]);
        }
        let gs = GadgetSet {
            nodes,
            grid,
            vertices,
            centers,
            satellites,
            gadget_of,
        };
        for (v, w) in gs.grid.induced_edges() {
            if gs.partner_edge(v, w).is_none() {
                return bad(format!("grid edge {v}-{w} carries no partner pair"));
            }
        }
        Ok(gs)
    }
}

/// Build the gadget node set of `g`, filling free satellite slots in the
/// fixed order +x, -x, +y, -y.
///
/// Requires at least two vertices, maximum degree 3 and no isolated vertex.
/// The equivalence with Hamilton paths additionally needs `g` to be
/// connected: gadgets of separate components can sit close enough for a
/// non-partner edge to join them at interference 3.
pub fn build_gadgets(g: &GridGraph) -> Result<GadgetSet> {
    build_with_fill(g, |_| OFFSETS)
}

/// Like [`build_gadgets`], but each vertex fills its free slots in an order
/// drawn from a seeded generator.
pub fn build_gadgets_seeded(g: &GridGraph, seed: u64) -> Result<GadgetSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_with_fill(g, |_| {
        let mut order = OFFSETS;
        order.shuffle(&mut rng);
        order
    })
}

fn check_reducible(g: &GridGraph) -> Result<()> {
    if g.len() < 2 {
        return Err(Error::NotReducible(format!(
            "need at least 2 vertices, got {}",
            g.len()
        )));
    }
    if g.max_degree() > 3 {
        return Err(Error::NotReducible(format!(
            "maximum degree {} exceeds 3",
            g.max_degree()
        )));
    }
    if let Some(v) = g.vertices().find(|&v| g.degree(v) == 0) {
        return Err(Error::NotReducible(format!("vertex {v} is isolated")));
    }
    Ok(())
}

fn build_with_fill(
    g: &GridGraph,
    mut fill_order: impl FnMut(GridVertex) -> [(i64, i64); 4],
) -> Result<GadgetSet> {
    check_reducible(g)?;
    let mut points = Vec::with_capacity(4 * g.len());
    let mut roles = Vec::with_capacity(4 * g.len());
    for v in g.vertices() {
        let c = v.to_point();
        points.push(c);
        roles.push((Role::Center, v));
        let mandatory: Vec<(i64, i64)> = OFFSETS
            .iter()
            .copied()
            .filter(|&(dx, dy)| g.contains(GridVertex::new(v.x + dx, v.y + dy)))
            .collect();
        let mut chosen = mandatory.clone();
        for off in fill_order(v) {
            if chosen.len() == 3 {
                break;
            }
            if !chosen.contains(&off) {
                chosen.push(off);
            }
        }
        for (dx, dy) in chosen {
            points.push(c + Point::new(dx, dy));
            roles.push((Role::Satellite, v));
        }
    }
    let index: BTreeMap<Point, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let annotations = points
        .iter()
        .zip(&roles)
        .map(|(&p, &(role, owner))| {
            let partner = match role {
                Role::Center => None,
                Role::Satellite => {
                    // the partner sits one half step further along the same edge
                    let dir = p - owner.to_point();
                    let next = GridVertex::new(owner.x + dir.x, owner.y + dir.y);
                    if g.contains(next) {
                        index.get(&(p + Point::new(2 * dir.x, 2 * dir.y))).copied()
                    } else {
                        None
                    }
                }
            };
            Annotation {
                role,
                owner,
                partner,
            }
        })
        .collect();
    let nodes = NodeSet::with_annotations(points, annotations)?;
    GadgetSet::from_annotated(nodes)
}

/// Tree of a Hamilton path: every center joined to its satellites, plus the
/// partner edge of each consecutive pair on the path.
pub fn tree_from_hamilton_path(gs: &GadgetSet, path: &[GridVertex]) -> Result<SpanningTree> {
    verify_hamilton_path(gs.grid(), path).map_err(Error::NotHamiltonian)?;
    let mut edges = Vec::with_capacity(gs.nodes().len() - 1);
    for g in 0..gs.gadget_count() {
        for s in gs.satellites(g) {
            edges.push(Edge::new(gs.center(g), s));
        }
    }
    for w in path.windows(2) {
        let e = gs
            .partner_edge(w[0], w[1])
            .expect("consecutive path vertices share a grid edge");
        edges.push(e);
    }
    Ok(SpanningTree::new(edges))
}

/// Tree edges joining two different gadgets other than partner pairs.
pub fn cross_gadget_violations(gs: &GadgetSet, tree: &SpanningTree) -> Vec<Edge> {
    tree.edges()
        .iter()
        .copied()
        .filter(|&e| gs.gadget_of(e.a) != gs.gadget_of(e.b) && !gs.is_partner_edge(e))
        .collect()
}

/// Recover a Hamilton path from a tree of interference at most 3 by
/// contracting every gadget to its grid vertex.
///
/// The contracted graph is connected with maximum degree 2, hence a path or
/// a cycle; a cycle is opened at its row-major smallest vertex. Anything
/// else is reported as [`Error::LemmaViolation`].
pub fn hamilton_from_tree(gs: &GadgetSet, tree: &SpanningTree) -> Result<VertexPath> {
    let profile = tree_profile(gs.nodes(), tree)?;
    if profile.max > 3 {
        return Err(Error::InterferenceTooHigh(profile.max));
    }
    let violations = cross_gadget_violations(gs, tree);
    if let Some(e) = violations.first() {
        return Err(Error::LemmaViolation(format!(
            "edge {e} joins two gadgets without being a partner pair"
        )));
    }
    let k = gs.gadget_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); k];
    let mut uf = UnionFind::new(k);
    let mut edge_count = 0;
    for &e in tree.edges() {
        let (ga, gb) = (gs.gadget_of(e.a), gs.gadget_of(e.b));
        if ga != gb {
            adj[ga].push(gb);
            adj[gb].push(ga);
            uf.union(ga, gb);
            edge_count += 1;
        }
    }
    if let Some(g) = (0..k).find(|&g| adj[g].len() > 2) {
        return Err(Error::LemmaViolation(format!(
            "gadget {} connects to {} other gadgets",
            gs.vertex(g),
            adj[g].len()
        )));
    }
    let root = uf.find(0);
    if (0..k).any(|g| uf.find(g) != root) {
        return Err(Error::LemmaViolation(
            "contracted graph is disconnected".into(),
        ));
    }
    for a in adj.iter_mut() {
        a.sort_unstable();
    }
    let (start, mut prev) = if edge_count + 1 == k {
        let start = (0..k)
            .find(|&g| adj[g].len() <= 1)
            .expect("a path has an endpoint");
        (start, usize::MAX)
    } else {
        debug_assert_eq!(edge_count, k);
        // walk the cycle from gadget 0 towards its larger neighbor, so the
        // dropped edge is the one between 0 and its smaller neighbor
        (0, adj[0][0])
    };
    let mut order = Vec::with_capacity(k);
    let mut cur = start;
    loop {
        order.push(cur);
        if order.len() == k {
            break;
        }
        let next = adj[cur].iter().copied().rev().find(|&w| w != prev);
        match next {
            Some(w) => {
                prev = cur;
                cur = w;
            }
            None => {
                return Err(Error::LemmaViolation(
                    "contracted graph is not a path".into(),
                ))
            }
        }
    }
    let path: VertexPath = order.into_iter().map(|g| gs.vertex(g)).collect();
    verify_hamilton_path(gs.grid(), &path)
        .map_err(|why| Error::LemmaViolation(format!("extracted sequence is invalid: {why}")))?;
    Ok(path)
}

/// Which tree edges [`cross_gadget_perturbations`] removes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PerturbScope {
    PartnerEdges,
    AllEdges,
}

#[derive(Clone, Debug)]
pub struct Perturbation {
    pub removed: Edge,
    pub added: Edge,
    pub tree: SpanningTree,
}

/// All trees obtained from `tree` by removing one edge (within `scope`) and
/// reconnecting the two halves with an edge that joins different gadgets
/// without being a partner pair.
pub fn cross_gadget_perturbations(
    gs: &GadgetSet,
    tree: &SpanningTree,
    scope: PerturbScope,
) -> Result<Vec<Perturbation>> {
    validate_tree(gs.nodes(), tree)?;
    let n = gs.nodes().len();
    let mut out = Vec::new();
    for &removed in tree.edges() {
        if scope == PerturbScope::PartnerEdges && !gs.is_partner_edge(removed) {
            continue;
        }
        let mut uf = UnionFind::new(n);
        for &e in tree.edges() {
            if e != removed {
                uf.union(e.a, e.b);
            }
        }
        for u in 0..n {
            for w in u + 1..n {
                let added = Edge::new(u, w);
                if uf.find(u) == uf.find(w)
                    || gs.gadget_of(u) == gs.gadget_of(w)
                    || gs.is_partner_edge(added)
                {
                    continue;
                }
                let edges = tree
                    .edges()
                    .iter()
                    .copied()
                    .filter(|&e| e != removed)
                    .chain(std::iter::once(added));
                out.push(Perturbation {
                    removed,
                    added,
                    tree: SpanningTree::new(edges),
                });
            }
        }
    }
    Ok(out)
}
