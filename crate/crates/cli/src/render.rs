//! Schematic SVG figures of canonical drawings.
//!
//! Each class is an axis-parallel box holding its vertices on a horizontal
//! line. Corridors follow a straight-line layout of the witness
//! planarization: the longest face is pinned to a circle and every other node
//! sits at the barycentre of its neighbours.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;
use unavoidable::drawing::CrossingRecord;
use unavoidable::realizer::{PlanarizedWitness, WitnessNode};
use unavoidable::template::{canonical_drawing_with, rotation_system_of, CanonicalSpec, Side, TemplateError};
use unavoidable::Vertex;

const CANVAS: f64 = 900.0;
const MARGIN: f64 = 90.0;
const VERTEX_GAP: f64 = 14.0;
const BOX_HEIGHT: f64 = 26.0;
const STRAND_GAP: f64 = 1.6;
const LAYOUT_ROUNDS: usize = 4000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("witness does not realize the template's rotation system: {0}")]
    WitnessMismatch(String),
    #[error(transparent)]
    Template(#[from] TemplateError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoxPlacement {
    pub class: u32,
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
    /// Vertex positions, `i(n)` first.
    pub vertices: Vec<(Vertex, Point)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Corridor {
    pub i: u32,
    pub j: u32,
    /// From the attachment on box `i` to the attachment on box `j`, through
    /// the crossing nodes of the witness edge.
    pub polyline: Vec<Point>,
    /// Perpendicular offset of every strand `(u, v)`, `u` in class `i`.
    pub strands: Vec<(Vertex, Vertex, f64)>,
}

/// Geometry of a figure before it is written out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RenderPlan {
    pub boxes: Vec<BoxPlacement>,
    pub corridors: Vec<Corridor>,
    /// Classes attached along the top of each box, left to right, and along
    /// the bottom, left to right.
    pub attachments: BTreeMap<u32, (Vec<u32>, Vec<u32>)>,
}

fn faces(w: &PlanarizedWitness) -> Vec<Vec<usize>> {
    let mut seen = vec![false; w.darts.len()];
    let mut out = Vec::new();
    for start in 0..w.darts.len() {
        if seen[start] {
            continue;
        }
        let mut face = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            face.push(d);
            let rot = &w.rotation[w.darts[d].head];
            let k = rot.iter().position(|&x| x == d ^ 1).expect("twin in rotation");
            d = rot[(k + 1) % rot.len()];
        }
        out.push(face);
    }
    out
}

/// Tutte-style barycentric placement in the unit square.
fn layout(w: &PlanarizedWitness) -> Vec<Point> {
    let count = w.nodes.len();
    let mut pos = vec![Point::new(0.5, 0.5); count];
    if count < 2 {
        return pos;
    }
    let outer = faces(w).into_iter().max_by_key(|f| f.len()).unwrap_or_default();
    let mut ring: Vec<usize> = Vec::new();
    for &d in &outer {
        let v = w.darts[d].tail;
        if !ring.contains(&v) {
            ring.push(v);
        }
    }
    let mut fixed = vec![false; count];
    for (k, &v) in ring.iter().enumerate() {
        let angle = std::f64::consts::TAU * k as f64 / ring.len() as f64 - std::f64::consts::FRAC_PI_2;
        pos[v] = Point::new(0.5 + 0.5 * angle.cos(), 0.5 + 0.5 * angle.sin());
        fixed[v] = true;
    }
    let nbrs: Vec<Vec<usize>> = w.rotation.iter().map(|r| r.iter().map(|&d| w.darts[d].head).collect()).collect();
    for _ in 0..LAYOUT_ROUNDS {
        for v in 0..count {
            if fixed[v] || nbrs[v].is_empty() {
                continue;
            }
            let k = nbrs[v].len() as f64;
            let (sx, sy) = nbrs[v].iter().fold((0.0, 0.0), |(x, y), &u| (x + pos[u].x, y + pos[u].y));
            pos[v] = Point::new(sx / k, sy / k);
        }
    }
    pos
}

fn to_canvas(p: Point) -> Point {
    let span = CANVAS - 2.0 * MARGIN;
    Point::new(MARGIN + p.x * span, MARGIN + p.y * span)
}

/// Computes boxes, attachments and corridors.
pub fn plan(spec: &CanonicalSpec, witness: &PlanarizedWitness) -> Result<RenderPlan, RenderError> {
    let t = &spec.template;
    let n = spec.n;
    let problems = witness.check(&rotation_system_of(t));
    if let Some(first) = problems.first() {
        return Err(RenderError::WitnessMismatch(first.clone()));
    }
    let pos = layout(witness);
    let node_pos = |k: usize| to_canvas(pos[k]);
    let class_node: BTreeMap<u32, usize> = witness
        .nodes
        .iter()
        .enumerate()
        .filter_map(|(k, node)| match node {
            WitnessNode::Vertex(v) => Some((v.class(), k)),
            WitnessNode::Crossing(_) => None,
        })
        .collect();
    let m = t.m() as u32;
    let width = if n > 1 { n as f64 * VERTEX_GAP } else { 0.0 };
    let height = if n > 1 { BOX_HEIGHT } else { 0.0 };
    let mut boxes = Vec::new();
    let mut attachments = BTreeMap::new();
    for i in 1..=m {
        let c = node_pos(class_node[&i]);
        let (left, top) = (c.x - width / 2.0, c.y - height / 2.0);
        let vertices = (0..n)
            .map(|k| {
                let v = Vertex::new(i, (n - k) as u32);
                let x = if n > 1 { left + (k as f64 + 0.5) * VERTEX_GAP } else { c.x };
                (v, Point::new(x, c.y))
            })
            .collect();
        boxes.push(BoxPlacement { class: i, left, top, width, height, vertices });
        let top_side: Vec<u32> = t.plus(i).iter().copied().collect();
        let bottom_side: Vec<u32> = t.minus(i).iter().rev().copied().collect();
        attachments.insert(i, (top_side, bottom_side));
    }
    let attach = |i: u32, j: u32| -> Point {
        let b = &boxes[i as usize - 1];
        let (top_side, bottom_side) = &attachments[&i];
        let (list, y) = match t.side_of(j, i) {
            Side::Plus => (top_side, b.top),
            Side::Minus => (bottom_side, b.top + b.height),
        };
        let k = list.iter().position(|&x| x == j).expect("attached");
        Point::new(b.left + b.width * (k as f64 + 1.0) / (list.len() as f64 + 1.0), y)
    };
    let mut corridors = Vec::new();
    for seg in &witness.segment_map {
        let (a, b) = seg.edge.ends();
        let (i, j) = (a.class(), b.class());
        let mut polyline = vec![attach(i, j)];
        if let Some((_, inner)) = seg.path.split_first() {
            if let Some((_, inner)) = inner.split_last() {
                polyline.extend(inner.iter().map(|&k| node_pos(k)));
            }
        }
        polyline.push(attach(j, i));
        let total = (n * n) as f64;
        let strands = (1..=n as u32)
            .flat_map(|u| (1..=n as u32).map(move |v| (u, v)))
            .enumerate()
            .map(|(k, (u, v))| (Vertex::new(i, u), Vertex::new(j, v), (k as f64 - (total - 1.0) / 2.0) * STRAND_GAP))
            .collect();
        corridors.push(Corridor { i, j, polyline, strands });
    }
    Ok(RenderPlan { boxes, corridors, attachments })
}

fn offset_polyline(line: &[Point], offset: f64) -> Vec<Point> {
    let normal = |a: Point, b: Point| {
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let len = dx.hypot(dy).max(1e-9);
        (-dy / len, dx / len)
    };
    (0..line.len())
        .map(|k| {
            let before = (k > 0).then(|| normal(line[k - 1], line[k]));
            let after = (k + 1 < line.len()).then(|| normal(line[k], line[k + 1]));
            let (nx, ny) = match (before, after) {
                (Some(a), Some(b)) => ((a.0 + b.0) / 2.0, (a.1 + b.1) / 2.0),
                (Some(a), None) | (None, Some(a)) => a,
                (None, None) => (0.0, 0.0),
            };
            Point::new(line[k].x + nx * offset, line[k].y + ny * offset)
        })
        .collect()
}

fn points_attr(ps: &[Point]) -> String {
    ps.iter().map(|p| format!("{:.2},{:.2}", p.x, p.y)).collect::<Vec<_>>().join(" ")
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// An SVG 1.1 figure of the canonical drawing; its `<metadata>` carries the
/// crossing list of the drawing as JSON.
pub fn render_svg(spec: &CanonicalSpec, witness: &PlanarizedWitness) -> Result<String, RenderError> {
    let plan = plan(spec, witness)?;
    let drawing = canonical_drawing_with(spec, Some(witness))?;
    let crossings: Vec<&CrossingRecord> = drawing.crossings().iter().collect();
    let metadata = serde_json::to_string(&crossings).expect("crossings serialize");
    let vertex_at: BTreeMap<Vertex, Point> =
        plan.boxes.iter().flat_map(|b| b.vertices.iter().copied()).collect();

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(s, "<!-- unavoidable {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{CANVAS}\" height=\"{CANVAS}\" viewBox=\"0 0 {CANVAS} {CANVAS}\">"
    );
    let _ = writeln!(s, "<metadata id=\"crossings\">{}</metadata>", escape(&metadata));
    s.push_str("<g id=\"corridors\" fill=\"none\" stroke-linejoin=\"round\">\n");
    for c in &plan.corridors {
        let width = (spec.n * spec.n) as f64 * STRAND_GAP + 3.0;
        let _ = writeln!(
            s,
            "<polyline class=\"corridor\" data-classes=\"{}-{}\" points=\"{}\" stroke=\"#d8e4f0\" stroke-width=\"{width:.2}\"/>",
            c.i,
            c.j,
            points_attr(&c.polyline)
        );
    }
    for c in &plan.corridors {
        for &(u, v, off) in &c.strands {
            let mut ps = vec![vertex_at[&u]];
            ps.extend(offset_polyline(&c.polyline, off));
            ps.push(vertex_at[&v]);
            let _ = writeln!(
                s,
                "<polyline class=\"strand\" data-edge=\"{u}-{v}\" points=\"{}\" stroke=\"#335577\" stroke-width=\"0.6\"/>",
                points_attr(&ps)
            );
        }
    }
    s.push_str("</g>\n<g id=\"boxes\">\n");
    for b in &plan.boxes {
        if b.width > 0.0 {
            let _ = writeln!(
                s,
                "<rect class=\"box\" data-class=\"{}\" x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"#ffffff\" stroke=\"#000000\"/>",
                b.class, b.left, b.top, b.width, b.height
            );
        }
        for (v, p) in &b.vertices {
            let _ = writeln!(s, "<circle class=\"vertex\" data-vertex=\"{v}\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\"/>", p.x, p.y);
        }
        let label_y = b.top - 6.0;
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
            b.left + b.width / 2.0,
            label_y,
            b.class
        );
    }
    s.push_str("</g>\n</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use unavoidable::realizer::SearchConfig;
    use unavoidable::template::{gamma5, realization_of, Template};

    fn witness(t: &Template) -> PlanarizedWitness {
        realization_of(t, &SearchConfig::default()).unwrap().witness().unwrap().clone()
    }

    #[test]
    fn gamma5_has_five_boxes_and_ten_corridors() {
        let t = gamma5();
        let w = witness(&t);
        let p = plan(&CanonicalSpec::new(t.clone(), 3).unwrap(), &w).unwrap();
        assert_eq!(p.boxes.len(), 5);
        assert_eq!(p.corridors.len(), 10);
        for c in &p.corridors {
            assert_eq!(c.strands.len(), 9);
        }
        for i in 1..=5u32 {
            let (top, bottom) = &p.attachments[&i];
            assert_eq!(top, &t.plus(i).iter().copied().collect::<Vec<_>>());
            assert_eq!(bottom, &t.minus(i).iter().rev().copied().collect::<Vec<_>>());
        }
    }

    #[test]
    fn vertices_run_right_to_left() {
        let t = Template::from_lists(&[(vec![2], vec![]), (vec![1], vec![])]).unwrap();
        let p = plan(&CanonicalSpec::new(t.clone(), 4).unwrap(), &witness(&t)).unwrap();
        let xs: Vec<(u32, f64)> = p.boxes[0].vertices.iter().map(|(v, q)| (v.index().unwrap(), q.x)).collect();
        assert_eq!(xs.iter().map(|x| x.0).collect::<Vec<_>>(), vec![4, 3, 2, 1]);
        assert!(xs.windows(2).all(|w| w[0].1 < w[1].1));
    }

    #[test]
    fn singleton_classes_are_points() {
        let t = gamma5();
        let (spec, w) = (CanonicalSpec::new(t.clone(), 1).unwrap(), witness(&t));
        let p = plan(&spec, &w).unwrap();
        assert!(p.boxes.iter().all(|b| b.width == 0.0 && b.height == 0.0));
        assert!(!render_svg(&spec, &w).unwrap().contains("<rect"));
    }

    #[test]
    fn foreign_witness_is_rejected() {
        let other = Template::from_lists(&[(vec![2, 3], vec![]), (vec![3, 1], vec![]), (vec![1, 2], vec![])]).unwrap();
        let spec = CanonicalSpec::new(gamma5(), 2).unwrap();
        assert!(matches!(render_svg(&spec, &witness(&other)), Err(RenderError::WitnessMismatch(_))));
    }

    #[test]
    fn metadata_is_the_canonical_crossing_list() {
        let spec = CanonicalSpec::new(gamma5(), 2).unwrap();
        let w = witness(&gamma5());
        let svg = render_svg(&spec, &w).unwrap();
        let start = svg.find("<metadata id=\"crossings\">").unwrap() + "<metadata id=\"crossings\">".len();
        let end = svg.find("</metadata>").unwrap();
        let parsed: Vec<CrossingRecord> = serde_json::from_str(&svg[start..end]).unwrap();
        let d = unavoidable::template::canonical_drawing(&spec, &SearchConfig::default()).unwrap();
        assert_eq!(parsed, d.crossings().to_vec());
        assert!(svg.contains("version=\"1.1\""));
    }
}
