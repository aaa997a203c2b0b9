//! The instance file format.
//!
//! A line-oriented text format. `#` starts a comment; blank lines are
//! ignored. A header declares the version, the kind and the coordinate
//! unit, followed by counted blocks:
//!
//! ```text
//! format_version 1
//! kind points
//! unit quarter-units
//! nodes 3
//! 0 0
//! 4 0
//! 8 0
//! annotations 3          # optional
//! center 0 0
//! satellite 0 0 2        # owner grid vertex, partner index or '-'
//! satellite 1 0 1
//! tree 2                 # optional
//! 0 1
//! 1 2
//! ```
//!
//! Grid instances use `kind grid`, `unit grid-units` and a single
//! `vertices <count>` block of grid coordinates.

use std::fmt::Write as _;

use interf_core::{Annotation, Edge, GridGraph, GridVertex, NodeSet, Point, Role, SpanningTree};
use thiserror::Error;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Points {
        nodes: NodeSet,
        tree: Option<SpanningTree>,
    },
    Grid(GridGraph),
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

type Tokens<'a> = Box<dyn Iterator<Item = (usize, Vec<&'a str>)> + 'a>;

struct Lines<'a> {
    inner: std::iter::Peekable<Tokens<'a>>,
    last_line: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let iter: Tokens<'a> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
                .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
                .filter(|(_, toks)| !toks.is_empty()),
        );
        Lines {
            inner: iter.peekable(),
            last_line: text.lines().count().max(1),
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.inner.next().ok_or_else(|| ParseError {
            line: self.last_line,
            message: format!("unexpected end of file, expected {what}"),
        })
    }

    fn peek_keyword(&mut self) -> Option<(usize, &'a str)> {
        self.inner.peek().map(|(l, toks)| (*l, toks[0]))
    }
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

fn int<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .or_else(|_| err(line, format!("expected integer {what}, found '{tok}'")))
}

fn header<'a>(lines: &mut Lines<'a>, key: &str) -> Result<(usize, &'a str), ParseError> {
    let (line, toks) = lines.next(key)?;
    match toks.as_slice() {
        [k, v] if *k == key => Ok((line, v)),
        _ => err(line, format!("expected '{key} <value>'")),
    }
}

fn block_count(lines: &mut Lines<'_>, key: &str) -> Result<(usize, usize), ParseError> {
    let (line, toks) = lines.next(key)?;
    match toks.as_slice() {
        [k, c] if *k == key => Ok((line, int(line, c, "count")?)),
        _ => err(line, format!("expected '{key} <count>'")),
    }
}

fn pair(lines: &mut Lines<'_>, what: &str) -> Result<(usize, i64, i64), ParseError> {
    let (line, toks) = lines.next(what)?;
    match toks.as_slice() {
        [x, y] => Ok((line, int(line, x, "x")?, int(line, y, "y")?)),
        _ => err(line, format!("expected two integers for {what}")),
    }
}

pub fn parse(text: &str) -> Result<Instance, ParseError> {
    let mut lines = Lines::new(text);
    let (line, v) = header(&mut lines, "format_version")?;
    let version: u32 = int(line, v, "version")?;
    if version != FORMAT_VERSION {
        return err(line, format!("unsupported format_version {version}"));
    }
    let (kind_line, kind) = header(&mut lines, "kind")?;
    let (unit_line, unit) = header(&mut lines, "unit")?;
    let instance = match kind {
        "points" => {
            if unit != "quarter-units" {
                return err(
                    unit_line,
                    "points instances must declare 'unit quarter-units'",
                );
            }
            parse_points(&mut lines)?
        }
        "grid" => {
            if unit != "grid-units" {
                return err(unit_line, "grid instances must declare 'unit grid-units'");
            }
            let (_, count) = block_count(&mut lines, "vertices")?;
            let mut vertices = Vec::with_capacity(count);
            for _ in 0..count {
                let (line, x, y) = pair(&mut lines, "a vertex")?;
                let v = GridVertex::new(x, y);
                if vertices.contains(&v) {
                    return err(line, format!("duplicate vertex {v}"));
                }
                vertices.push(v);
            }
            Instance::Grid(GridGraph::new(vertices))
        }
        other => return err(kind_line, format!("unknown kind '{other}'")),
    };
    if let Some((line, kw)) = lines.peek_keyword() {
        return err(line, format!("unexpected '{kw}'"));
    }
    Ok(instance)
}

fn parse_points(lines: &mut Lines<'_>) -> Result<Instance, ParseError> {
    let (count_line, count) = block_count(lines, "nodes")?;
    if count == 0 {
        return err(count_line, "a node set needs at least one node");
    }
    let mut points = Vec::with_capacity(count);
    let mut point_lines = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, x, y) = pair(lines, "a node")?;
        let p = Point::new(x, y);
        if points.contains(&p) {
            return err(line, format!("duplicate node {p}"));
        }
        points.push(p);
        point_lines.push(line);
    }
    let mut annotations = None;
    if let Some((line, "annotations")) = lines.peek_keyword() {
        let (_, c) = block_count(lines, "annotations")?;
        if c != count {
            return err(line, format!("{c} annotations for {count} nodes"));
        }
        let mut anns = Vec::with_capacity(c);
        for _ in 0..c {
            let (line, toks) = lines.next("an annotation")?;
            let ann = match toks.as_slice() {
                ["center", a, b] => Annotation {
                    role: Role::Center,
                    owner: GridVertex::new(int(line, a, "owner x")?, int(line, b, "owner y")?),
                    partner: None,
                },
                ["satellite", a, b, p] => Annotation {
                    role: Role::Satellite,
                    owner: GridVertex::new(int(line, a, "owner x")?, int(line, b, "owner y")?),
                    partner: match *p {
                        "-" => None,
                        p => {
                            let j: usize = int(line, p, "partner index")?;
                            if j >= count {
                                return err(line, format!("partner index {j} out of range"));
                            }
                            Some(j)
                        }
                    },
                },
                _ => {
                    return err(
                        line,
                        "expected 'center <a> <b>' or 'satellite <a> <b> <partner|->'",
                    )
                }
            };
            anns.push(ann);
        }
        annotations = Some((line, anns));
    }
    let nodes = match annotations {
        None => NodeSet::new(points).or_else(|e| err(count_line, e.to_string()))?,
        Some((line, anns)) => {
            NodeSet::with_annotations(points, anns).or_else(|e| err(line, e.to_string()))?
        }
    };

    let mut tree = None;
    if let Some((_, "tree")) = lines.peek_keyword() {
        let (_, c) = block_count(lines, "tree")?;
        let mut edges = Vec::with_capacity(c);
        for _ in 0..c {
            let (line, toks) = lines.next("a tree edge")?;
            let (a, b) = match toks.as_slice() {
                [a, b] => (
                    int::<usize>(line, a, "index")?,
                    int::<usize>(line, b, "index")?,
                ),
                _ => return err(line, "expected two node indices"),
            };
            if a >= count || b >= count {
                return err(
                    line,
                    format!("edge ({a}, {b}) references a node outside 0..{count}"),
                );
            }
            edges.push(Edge::new(a, b));
        }
        tree = Some(SpanningTree::new(edges));
    }
    Ok(Instance::Points { nodes, tree })
}

pub fn serialize(instance: &Instance) -> String {
    let mut out = String::new();
    writeln!(out, "format_version {FORMAT_VERSION}").unwrap();
    match instance {
        Instance::Grid(g) => {
            out.push_str("kind grid\nunit grid-units\n");
            writeln!(out, "vertices {}", g.len()).unwrap();
            for v in g.vertices() {
                writeln!(out, "{} {}", v.x, v.y).unwrap();
            }
        }
        Instance::Points { nodes, tree } => {
            out.push_str("kind points\nunit quarter-units\n");
            writeln!(out, "nodes {}", nodes.len()).unwrap();
            for p in nodes.points() {
                writeln!(out, "{} {}", p.x, p.y).unwrap();
            }
            if let Some(anns) = nodes.annotations() {
                writeln!(out, "annotations {}", anns.len()).unwrap();
                for a in anns {
                    match a.role {
                        Role::Center => writeln!(out, "center {} {}", a.owner.x, a.owner.y),
                        Role::Satellite => {
                            let partner = a.partner.map_or("-".to_string(), |p| p.to_string());
                            writeln!(out, "satellite {} {} {partner}", a.owner.x, a.owner.y)
                        }
                    }
                    .unwrap();
                }
            }
            if let Some(tree) = tree {
                writeln!(out, "tree {}", tree.len()).unwrap();
                for e in tree.edges() {
                    writeln!(out, "{} {}", e.a, e.b).unwrap();
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let text = "\
# three collinear nodes
format_version 1
kind points
unit quarter-units
nodes 3
0 0
4 0   # middle
8 0

tree 2
0 1
1 2
";
        let Instance::Points { nodes, tree } = parse(text).unwrap() else {
            panic!("expected points");
        };
        assert_eq!(nodes.len(), 3);
        assert_eq!(tree, Some(SpanningTree::from_pairs(&[(0, 1), (1, 2)])));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let cases = [
            ("format_version 2\n", 1),
            ("format_version 1\nkind points\nunit grid-units\n", 3),
            ("format_version 1\nkind blob\nunit x\n", 2),
            ("format_version 1\nkind points\nunit quarter-units\nnodes 2\n0 0\n0 x\n", 6),
            ("format_version 1\nkind points\nunit quarter-units\nnodes 2\n0 0\n0 0\n", 6),
            ("format_version 1\nkind points\nunit quarter-units\nnodes 2\n0 0\n", 5),
            (
                "format_version 1\nkind points\nunit quarter-units\nnodes 2\n0 0\n1 0\ntree 1\n0 2\n",
                8,
            ),
            ("format_version 1\nkind grid\nunit grid-units\nvertices 1\n0 0\nextra 1\n", 6),
        ];
        for (text, line) in cases {
            let e = parse(text).unwrap_err();
            assert_eq!(e.line, line, "{text:?}: {e}");
        }
    }

    #[test]
    fn grid_round_trip() {
        let g = Instance::Grid(GridGraph::from_coords(&[(1, 0), (0, 0), (0, -1)]));
        assert_eq!(parse(&serialize(&g)).unwrap(), g);
    }
}
