//! Crossings of the box-and-corridor expansion of a `K_m` witness.
//!
//! Class `i` is a box with its vertices on a horizontal line, `i(n)` leftmost.
//! Each witness edge `ij` becomes a corridor carrying `n^2` parallel strands;
//! corridors to plus-side classes leave the top of the box (left to right in
//! plus order), corridors to minus-side classes leave the bottom (right to
//! left in minus order). Inside a box every strand runs straight to its
//! vertex, so two strands entering the same side cross there iff their
//! entry order disagrees with the order of their vertices.

use std::collections::{BTreeMap, BTreeSet};

use unavoidable::combinatorics::Vertex;
use unavoidable::drawing::{Edge, EdgePair};
use unavoidable::realizer::{PlanarizedWitness, WitnessNode};
use unavoidable::template::{Side, Template};

fn x(n: usize, v: Vertex) -> i64 {
    n as i64 - v.index().expect("indexed vertex") as i64
}

/// Witness edge pairs sharing a crossing node, by class pair.
fn corridor_crossings(w: &PlanarizedWitness) -> BTreeSet<(Edge, Edge)> {
    let inner: BTreeMap<Edge, BTreeSet<usize>> = w
        .segment_map
        .iter()
        .map(|s| {
            let nodes = s.path.iter().copied().filter(|&k| matches!(w.nodes[k], WitnessNode::Crossing(_))).collect();
            (s.edge, nodes)
        })
        .collect();
    let mut out = BTreeSet::new();
    for (e, a) in &inner {
        for (f, b) in &inner {
            if e < f && a.intersection(b).next().is_some() {
                out.insert((*e, *f));
            }
        }
    }
    out
}

fn class_edge(e: Edge) -> Edge {
    let (a, b) = e.ends();
    Edge::new(Vertex::bare(a.class()), Vertex::bare(b.class()))
}

/// Position of the corridor to `j` along its side of box `i`, left to right.
fn attach(t: &Template, i: u32, j: u32) -> (Side, i64) {
    let side = t.side_of(j, i);
    let k = t.side(i, side).position(&j).expect("listed") as i64;
    match side {
        Side::Plus => (side, k),
        Side::Minus => (side, -k),
    }
}

/// Whether `s` and `t` (with distinct endpoints in class `i`, going to
/// different classes) cross inside box `i`.
fn cross_in_box(t: &Template, n: usize, i: u32, s: (Vertex, Vertex), u: (Vertex, Vertex)) -> bool {
    let (side_s, ps) = attach(t, i, s.1.class());
    let (side_u, pu) = attach(t, i, u.1.class());
    if side_s != side_u {
        return false;
    }
    (ps < pu) != (x(n, s.0) < x(n, u.0))
}

/// Crossing pairs of the expanded drawing of `K_n^m`.
pub fn expansion_crossings(t: &Template, n: usize, w: &PlanarizedWitness) -> BTreeSet<EdgePair> {
    let corridors = corridor_crossings(w);
    let m = t.m() as u32;
    let vertices: Vec<Vertex> = (1..=m).flat_map(|i| (1..=n as u32).map(move |k| Vertex::new(i, k))).collect();
    let edges: Vec<Edge> = vertices
        .iter()
        .flat_map(|&a| vertices.iter().filter(move |b| b.class() > a.class()).map(move |&b| Edge::new(a, b)))
        .collect();
    let mut out = BTreeSet::new();
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            if e.is_adjacent(f) {
                continue;
            }
            let (e0, e1) = e.ends();
            let (f0, f1) = f.ends();
            let ce = [e0.class(), e1.class()];
            let cf = [f0.class(), f1.class()];
            let shared: Vec<u32> = ce.iter().copied().filter(|c| cf.contains(c)).collect();
            let crossing = match shared.len() {
                0 => {
                    let (a, b) = (class_edge(e), class_edge(f));
                    corridors.contains(&(a.min(b), a.max(b)))
                }
                1 => {
                    let i = shared[0];
                    let orient = |a: Vertex, b: Vertex| if a.class() == i { (a, b) } else { (b, a) };
                    cross_in_box(t, n, i, orient(e0, e1), orient(f0, f1))
                }
                _ => same_corridor(t, n, (e0, e1), (f0, f1)),
            };
            if crossing {
                out.insert(EdgePair::new(e, f));
            }
        }
    }
    out
}

/// Two strands of one corridor: sorted by their class-`i` vertex where they
/// leave box `i`, they cross inside box `j` iff they reach it out of order.
fn same_corridor(t: &Template, n: usize, s: (Vertex, Vertex), u: (Vertex, Vertex)) -> bool {
    let (i, j) = (s.0.class(), s.1.class());
    let clockwise_at_i = |v: Vertex| match t.side_of(j, i) {
        Side::Plus => x(n, v),
        Side::Minus => -x(n, v),
    };
    // Parallel strands meet the far box in reversed clockwise order.
    let left_to_right_at_j = |v: Vertex| match t.side_of(i, j) {
        Side::Plus => -clockwise_at_i(v),
        Side::Minus => clockwise_at_i(v),
    };
    let order = left_to_right_at_j(s.0) < left_to_right_at_j(u.0);
    order != (x(n, s.1) < x(n, u.1))
}
