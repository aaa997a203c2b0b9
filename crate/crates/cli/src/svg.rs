//! Deterministic SVG pictures of node sets, trees and transmission disks.
//!
//! One grid unit is 100 pixel units, so one quarter-unit is 25. The y axis
//! points up.

use std::fmt::Write as _;

use interf_core::model::radii_from_edges;
use interf_core::{NodeSet, Role, SpanningTree};

const PX_PER_QUARTER: f64 = 25.0;
const MARGIN: f64 = 20.0;
const DOT_RADIUS: f64 = 5.0;

pub fn render(nodes: &NodeSet, tree: Option<&SpanningTree>) -> String {
    let edges = tree.map(|t| t.edges()).unwrap_or(&[]);
    let radii = radii_from_edges(nodes, edges);
    let disk_px: Vec<f64> = radii
        .sq_radii
        .iter()
        .map(|r| (r.value() as f64).sqrt() * PX_PER_QUARTER)
        .collect();
    let reach = disk_px.iter().copied().fold(0.0, f64::max) + MARGIN;

    let xs = nodes.points().iter().map(|p| p.x);
    let ys = nodes.points().iter().map(|p| p.y);
    let (min_x, max_x) = (xs.clone().min().unwrap(), xs.max().unwrap());
    let (min_y, max_y) = (ys.clone().min().unwrap(), ys.max().unwrap());
    let width = (max_x - min_x) as f64 * PX_PER_QUARTER + 2.0 * reach;
    let height = (max_y - min_y) as f64 * PX_PER_QUARTER + 2.0 * reach;
    let px = |x: i64| (x - min_x) as f64 * PX_PER_QUARTER + reach;
    let py = |y: i64| (max_y - y) as f64 * PX_PER_QUARTER + reach;

    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.1}" height="{height:.1}" viewBox="0 0 {width:.1} {height:.1}">"#
    )
    .unwrap();
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    out.push_str("<g id=\"disks\">\n");
    for (i, p) in nodes.points().iter().enumerate() {
        if radii.get(i).value() == 0 {
            continue;
        }
        writeln!(
            out,
            r##"<circle class="disk" cx="{:.1}" cy="{:.1}" r="{:.3}" fill="#3b7dd8" fill-opacity="0.08" stroke="#3b7dd8" stroke-opacity="0.4"/>"##,
            px(p.x),
            py(p.y),
            disk_px[i]
        )
        .unwrap();
    }
    out.push_str("</g>\n<g id=\"edges\">\n");
    for e in edges {
        let (a, b) = (nodes.point(e.a), nodes.point(e.b));
        writeln!(
            out,
            r#"<line class="edge" x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="black" stroke-width="2"/>"#,
            px(a.x),
            py(a.y),
            px(b.x),
            py(b.y)
        )
        .unwrap();
    }
    out.push_str("</g>\n<g id=\"nodes\">\n");
    for (i, p) in nodes.points().iter().enumerate() {
        let role = nodes.annotations().map(|a| a[i].role);
        let (class, fill) = match role {
            Some(Role::Satellite) => ("node satellite", "white"),
            Some(Role::Center) => ("node center", "black"),
            None => ("node", "black"),
        };
        writeln!(
            out,
            r#"<circle class="{class}" cx="{:.1}" cy="{:.1}" r="{DOT_RADIUS:.1}" fill="{fill}" stroke="black" stroke-width="1.5"/>"#,
            px(p.x),
            py(p.y)
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}
