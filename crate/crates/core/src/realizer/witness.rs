//! Planarized witnesses: a planar map whose nodes are the real vertices plus
//! one node per crossing, certifying that a rotation system is realizable.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::map::{twin, Map};
use super::RotationSystem;
use crate::combinatorics::{CyclicOrder, Vertex};
use crate::drawing::{AbstractDrawing, CrossingRecord, Edge, EdgePair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessNode {
    Vertex(Vertex),
    Crossing(usize),
}

impl fmt::Display for WitnessNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessNode::Vertex(v) => write!(f, "{v}"),
            WitnessNode::Crossing(k) => write!(f, "x{k}"),
        }
    }
}

/// A directed half of one segment of an original edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDart {
    pub tail: usize,
    pub head: usize,
    pub edge: Edge,
    /// The endpoint of `edge` this dart heads toward.
    pub toward: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentPath {
    pub edge: Edge,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarizedWitness {
    pub nodes: Vec<WitnessNode>,
    /// Darts `2k` and `2k + 1` are twins.
    pub darts: Vec<WitnessDart>,
    /// Clockwise darts leaving each node.
    pub rotation: Vec<Vec<usize>>,
    /// Node path of every original edge, from its smaller endpoint.
    pub segment_map: Vec<SegmentPath>,
}

impl PlanarizedWitness {
    pub(crate) fn from_map(map: &Map, vertices: &[Vertex], edges: &[Edge]) -> Self {
        let real = map.real as usize;
        let nodes: Vec<WitnessNode> = (0..map.node_count())
            .map(|k| if k < real { WitnessNode::Vertex(vertices[k]) } else { WitnessNode::Crossing(k - real) })
            .collect();
        let darts = (0..map.dart_count())
            .map(|d| WitnessDart {
                tail: map.origin[d] as usize,
                head: map.origin[twin(d as u32) as usize] as usize,
                edge: edges[map.edge[d] as usize],
                toward: vertices[map.toward[d] as usize],
            })
            .collect();
        let rotation: Vec<Vec<usize>> = (0..map.node_count() as u32)
            .map(|n| map.rotation(n).into_iter().map(|d| d as usize).collect())
            .collect();
        let mut w = PlanarizedWitness { nodes, darts, rotation, segment_map: Vec::new() };
        w.segment_map = edges.iter().map(|&e| SegmentPath { edge: e, path: w.trace(e) }).collect();
        w
    }

    fn node_of(&self, v: Vertex) -> Option<usize> {
        self.nodes.iter().position(|n| *n == WitnessNode::Vertex(v))
    }

    /// Follows `e` from its smaller endpoint, going straight through crossings.
    fn trace(&self, e: Edge) -> Vec<usize> {
        let Some(start) = self.node_of(e.ends().0) else { return Vec::new() };
        let Some(mut d) = self.rotation[start].iter().copied().find(|&d| self.darts[d].edge == e) else {
            return vec![start];
        };
        let mut path = vec![start];
        let limit = self.darts.len();
        while path.len() <= limit {
            let head = self.darts[d].head;
            path.push(head);
            if matches!(self.nodes[head], WitnessNode::Vertex(_)) {
                break;
            }
            let rot = &self.rotation[head];
            let Some(k) = rot.iter().position(|&x| x == d ^ 1) else { break };
            d = rot[(k + 2) % rot.len()];
        }
        path
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, WitnessNode::Crossing(_))).count()
    }

    fn path(&self, e: Edge) -> Option<&[usize]> {
        self.segment_map.iter().find(|s| s.edge == e).map(|s| s.path.as_slice())
    }

    /// The two edges through a crossing node and the clockwise order of the
    /// endpoints their four darts head toward.
    fn crossing_record(&self, node: usize) -> Option<CrossingRecord> {
        let rot = &self.rotation[node];
        if rot.len() != 4 {
            return None;
        }
        let e = self.darts[rot[0]].edge;
        let f = self.darts[rot[1]].edge;
        let ends: Vec<Vertex> = rot.iter().map(|&d| self.darts[d].toward).collect();
        Some(CrossingRecord::new(e, f, CyclicOrder::new(ends).ok()?))
    }

    /// Every violated witness invariant, checked against `rs`.
    pub fn check(&self, rs: &RotationSystem) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.nodes.len();
        if !self.darts.len().is_multiple_of(2) {
            out.push("odd number of darts".into());
            return out;
        }
        for (k, d) in self.darts.iter().enumerate() {
            let t = &self.darts[k ^ 1];
            if d.tail >= n || d.head >= n || t.tail != d.head || t.head != d.tail || t.edge != d.edge {
                out.push(format!("dart {k} does not match its twin"));
            }
        }
        let mut owner = vec![usize::MAX; self.darts.len()];
        for (node, rot) in self.rotation.iter().enumerate() {
            for &d in rot {
                if d >= self.darts.len() || self.darts[d].tail != node || owner[d] != usize::MAX {
                    out.push(format!("rotation at {} lists a foreign dart", self.nodes[node]));
                } else {
                    owner[d] = node;
                }
            }
        }
        if owner.contains(&usize::MAX) {
            out.push("some dart is missing from every rotation".into());
        }
        if !out.is_empty() {
            return out;
        }

        // Euler: V - E + F = 2C over the non-isolated components.
        let pos: HashMap<usize, (usize, usize)> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(node, rot)| rot.iter().enumerate().map(move |(k, &d)| (d, (node, k))))
            .collect();
        let face_next = |d: usize| {
            let t = d ^ 1;
            let (node, k) = pos[&t];
            let rot = &self.rotation[node];
            rot[(k + 1) % rot.len()]
        };
        let mut seen = vec![false; self.darts.len()];
        let mut faces = 0usize;
        for s in 0..self.darts.len() {
            if !seen[s] {
                faces += 1;
                let mut d = s;
                while !seen[d] {
                    seen[d] = true;
                    d = face_next(d);
                }
            }
        }
        let mut comp: Vec<usize> = (0..n).collect();
        fn find(c: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while c[r] != r {
                r = c[r];
            }
            c[x] = r;
            r
        }
        for d in self.darts.iter() {
            let (a, b) = (find(&mut comp, d.tail), find(&mut comp, d.head));
            comp[a] = b;
        }
        let nonisolated: BTreeSet<usize> = (0..n)
            .filter(|&k| !self.rotation[k].is_empty())
            .map(|k| find(&mut comp, k))
            .collect();
        let used_nodes = (0..n).filter(|&k| !self.rotation[k].is_empty()).count();
        let c = nonisolated.len();
        if used_nodes + faces != self.darts.len() / 2 + 2 * c {
            out.push(format!(
                "Euler check failed: {} nodes, {} segments, {} faces, {} components",
                used_nodes,
                self.darts.len() / 2,
                faces,
                c
            ));
        }

        // Crossing nodes: degree 4, each edge's two segments opposite.
        let mut through: HashMap<usize, BTreeSet<Edge>> = HashMap::new();
        for (node, rot) in self.rotation.iter().enumerate() {
            if let WitnessNode::Crossing(_) = self.nodes[node] {
                let es: Vec<Edge> = rot.iter().map(|&d| self.darts[d].edge).collect();
                if es.len() != 4 || es[0] != es[2] || es[1] != es[3] || es[0] == es[1] {
                    out.push(format!("crossing {} is not a proper crossing", self.nodes[node]));
                } else if es[0].is_adjacent(es[1]) {
                    out.push(format!("adjacent edges {} and {} cross at {}", es[0], es[1], self.nodes[node]));
                }
                through.insert(node, es.into_iter().collect());
            }
        }

        // Paths: simple, end at the right vertices, share at most one crossing.
        let mut crossings_on: BTreeMap<Edge, BTreeSet<usize>> = BTreeMap::new();
        for e in &rs.edges {
            let Some(path) = self.path(*e) else {
                out.push(format!("edge {e} has no path"));
                continue;
            };
            if path.len() < 2 {
                out.push(format!("path of {e} does not reach its far endpoint"));
                continue;
            }
            let (a, b) = e.ends();
            let ok_ends = self.nodes[path[0]] == WitnessNode::Vertex(a)
                && self.nodes[*path.last().unwrap()] == WitnessNode::Vertex(b);
            let inner = &path[1..path.len() - 1];
            let distinct: BTreeSet<usize> = inner.iter().copied().collect();
            if !ok_ends || distinct.len() != inner.len() {
                out.push(format!("path of {e} is not a simple path between its endpoints"));
            }
            if inner.iter().any(|k| !through.get(k).is_some_and(|s| s.contains(e))) {
                out.push(format!("path of {e} leaves its own segments"));
            }
            crossings_on.insert(*e, distinct);
        }
        let es: Vec<Edge> = crossings_on.keys().copied().collect();
        for (k, e) in es.iter().enumerate() {
            for f in &es[k + 1..] {
                let shared = crossings_on[e].intersection(&crossings_on[f]).count();
                if shared > 1 {
                    out.push(format!("edges {e} and {f} cross {shared} times"));
                }
            }
        }
        let segs: usize = self.segment_map.iter().map(|s| s.path.len().saturating_sub(1)).sum();
        if segs != self.darts.len() / 2 || self.segment_map.len() != rs.edges.len() {
            out.push("segment map does not cover the planarization exactly".into());
        }

        // Rotations at real vertices reproduce rs.
        for (node, w) in self.nodes.iter().enumerate() {
            if let WitnessNode::Vertex(v) = w {
                let got: Vec<Vertex> = self.rotation[node].iter().filter_map(|&d| self.darts[d].edge.other(*v)).collect();
                let want = rs.rotation.get(v).cloned().unwrap_or_default();
                match CyclicOrder::new(got) {
                    Ok(got) if got == want => {}
                    _ => out.push(format!("rotation at {v} differs from the rotation system")),
                }
            }
        }
        out
    }
}

/// The drawing certified by a witness: its crossings with their rotations and
/// the vertex rotations.
pub fn crossings_of_witness(w: &PlanarizedWitness) -> AbstractDrawing {
    let edges: Vec<Edge> = w.segment_map.iter().map(|s| s.edge).collect();
    let mut rotations = BTreeMap::new();
    for (node, n) in w.nodes.iter().enumerate() {
        if let WitnessNode::Vertex(v) = n {
            let order: Vec<Vertex> = w.rotation[node].iter().filter_map(|&d| w.darts[d].edge.other(*v)).collect();
            rotations.insert(*v, CyclicOrder::new(order).expect("simple witness"));
        }
    }
    let crossings = (0..w.nodes.len())
        .filter(|&k| matches!(w.nodes[k], WitnessNode::Crossing(_)))
        .filter_map(|k| w.crossing_record(k))
        .collect();
    AbstractDrawing::new(Vec::new(), edges, rotations, crossings)
}

/// Crossing data only, keyed by edge pair.
pub fn crossing_data(w: &PlanarizedWitness) -> BTreeMap<EdgePair, CyclicOrder> {
    crossings_of_witness(w).crossing_map()
}
