//! Abstract simple drawings.
//!
//! A drawing is recorded combinatorially: which independent edge pairs cross,
//! the rotation at every crossing, and the rotation at every vertex. Nothing
//! here checks that such data is realizable on the sphere; see
//! [`crate::realizer`] for that.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::combinatorics::{chords_cross, CombinatoricsError, CyclicOrder, Permutation, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("edge {0} is not in the drawing")]
    UnknownEdge(Edge),
    #[error("vertex {0} is not in the drawing")]
    UnknownVertex(Vertex),
    #[error("vertex {0} is not adjacent to {1}")]
    NotAdjacent(Vertex, Vertex),
    #[error("vertex map is not a bijection: {0}")]
    NotABijection(String),
    #[error("vertex map does not preserve adjacency at edge {0}")]
    NotAdjacencyPreserving(Edge),
    #[error("edge with equal endpoints {0}")]
    Loop(Vertex),
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
    #[error("drawing violates {} local axiom(s); first: {}", .0.len(), .0[0])]
    Invalid(Vec<Violation>),
}

/// An unordered pair of distinct vertices, stored with the smaller end first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vertex, Vertex);

impl Edge {
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, DrawingError> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge(a, b)),
            std::cmp::Ordering::Greater => Ok(Edge(b, a)),
            std::cmp::Ordering::Equal => Err(DrawingError::Loop(a)),
        }
    }

    pub fn ends(self) -> (Vertex, Vertex) {
        (self.0, self.1)
    }

    pub fn has(self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(self, v: Vertex) -> Option<Vertex> {
        if self.0 == v {
            Some(self.1)
        } else if self.1 == v {
            Some(self.0)
        } else {
            None
        }
    }

    pub fn is_adjacent(self, f: Edge) -> bool {
        self.has(f.0) || self.has(f.1)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0, self.1].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[Vertex; 2]>::deserialize(d)?;
        Edge::try_new(a, b).map_err(serde::de::Error::custom)
    }
}

/// An unordered pair of edges, smaller first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgePair(pub Edge, pub Edge);

impl EdgePair {
    pub fn new(e: Edge, f: Edge) -> Self {
        if e <= f {
            EdgePair(e, f)
        } else {
            EdgePair(f, e)
        }
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} x {}", self.0, self.1)
    }
}

/// One crossing: the two edges and the clockwise order of their four ends
/// around the crossing point, named by the endpoints they lead to.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingRecord {
    pub e: Edge,
    pub f: Edge,
    pub rotation: CyclicOrder,
}

impl CrossingRecord {
    pub fn new(e: Edge, f: Edge, rotation: CyclicOrder) -> Self {
        CrossingRecord { e, f, rotation }
    }

    pub fn key(&self) -> EdgePair {
        EdgePair::new(self.e, self.f)
    }
}

/// A local axiom broken by a drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    AdjacentCrossing { e: Edge, f: Edge },
    DuplicateCrossing { e: Edge, f: Edge },
    UnknownCrossingEdge { edge: Edge },
    MalformedCrossingRotation { e: Edge, f: Edge },
    NotAlternating { e: Edge, f: Edge },
    MalformedVertexRotation { vertex: Vertex },
    EdgeWithinClass { edge: Edge },
    VertexOutsideClasses { vertex: Vertex },
    VertexInTwoClasses { vertex: Vertex },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::AdjacentCrossing { e, f: g } => write!(f, "adjacent edges {e} and {g} cross"),
            Violation::DuplicateCrossing { e, f: g } => write!(f, "edges {e} and {g} cross more than once"),
            Violation::UnknownCrossingEdge { edge } => write!(f, "crossing uses unknown edge {edge}"),
            Violation::MalformedCrossingRotation { e, f: g } => {
                write!(f, "rotation at crossing {e} x {g} is not over its four endpoints")
            }
            Violation::NotAlternating { e, f: g } => {
                write!(f, "rotation at crossing {e} x {g} does not alternate between the edges")
            }
            Violation::MalformedVertexRotation { vertex } => {
                write!(f, "rotation at {vertex} does not list exactly its neighbours")
            }
            Violation::EdgeWithinClass { edge } => write!(f, "edge {edge} joins two vertices of one class"),
            Violation::VertexOutsideClasses { vertex } => write!(f, "vertex {vertex} belongs to no class"),
            Violation::VertexInTwoClasses { vertex } => write!(f, "vertex {vertex} belongs to two classes"),
        }
    }
}

/// A combinatorial simple drawing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AbstractDrawing {
    classes: Vec<Permutation>,
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
    vertex_rotations: BTreeMap<Vertex, CyclicOrder>,
    crossings: Vec<CrossingRecord>,
    index: HashMap<EdgePair, usize>,
}

#[derive(Serialize, Deserialize)]
struct DrawingJson {
    #[serde(default)]
    classes: Vec<Permutation>,
    edges: Vec<Edge>,
    #[serde(default)]
    vertex_rotations: BTreeMap<Vertex, CyclicOrder>,
    #[serde(default)]
    crossings: Vec<CrossingRecord>,
}

impl Serialize for AbstractDrawing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DrawingJson {
            classes: self.classes.clone(),
            edges: self.edges.iter().copied().collect(),
            vertex_rotations: self.vertex_rotations.clone(),
            crossings: self.crossings.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbstractDrawing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = DrawingJson::deserialize(d)?;
        Ok(AbstractDrawing::new(raw.classes, raw.edges, raw.vertex_rotations, raw.crossings))
    }
}

impl AbstractDrawing {
    /// Assembles a drawing without validating it.
    pub fn new(
        classes: Vec<Permutation>,
        edges: impl IntoIterator<Item = Edge>,
        vertex_rotations: BTreeMap<Vertex, CyclicOrder>,
        mut crossings: Vec<CrossingRecord>,
    ) -> Self {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let mut vertices: BTreeSet<Vertex> = classes.iter().flat_map(|c| c.iter().copied()).collect();
        for e in &edges {
            vertices.insert(e.0);
            vertices.insert(e.1);
        }
        vertices.extend(vertex_rotations.keys().copied());
        crossings.sort_by_key(|c| c.key());
        let mut index = HashMap::with_capacity(crossings.len());
        for (k, c) in crossings.iter().enumerate() {
            index.entry(c.key()).or_insert(k);
        }
        AbstractDrawing { classes, vertices, edges, vertex_rotations, crossings, index }
    }

    /// Parses JSON and rejects drawings with violations unless `allow_invalid`.
    pub fn from_json(text: &str, allow_invalid: bool) -> Result<Self, serde_json::Error> {
        let d: AbstractDrawing = serde_json::from_str(text)?;
        if !allow_invalid {
            let report = d.validate();
            if !report.is_empty() {
                let msg = DrawingError::Invalid(report).to_string();
                return Err(serde::de::Error::custom(msg));
            }
        }
        Ok(d)
    }

    pub fn with_classes(mut self, classes: Vec<Permutation>) -> Self {
        for c in &classes {
            self.vertices.extend(c.iter().copied());
        }
        self.classes = classes;
        self
    }

    /// Replaces (or adds) the crossing on `record`'s edge pair.
    pub fn with_crossing(&self, record: CrossingRecord) -> Self {
        let key = record.key();
        let mut crossings: Vec<_> = self.crossings.iter().filter(|c| c.key() != key).cloned().collect();
        crossings.push(record);
        AbstractDrawing::new(self.classes.clone(), self.edges.clone(), self.vertex_rotations.clone(), crossings)
    }

    /// Removes every crossing record on the pair.
    pub fn without_crossing(&self, e: Edge, f: Edge) -> Self {
        let key = EdgePair::new(e, f);
        let crossings = self.crossings.iter().filter(|c| c.key() != key).cloned().collect();
        AbstractDrawing::new(self.classes.clone(), self.edges.clone(), self.vertex_rotations.clone(), crossings)
    }

    /// Appends a record even if the pair already crosses.
    pub fn with_extra_crossing(&self, record: CrossingRecord) -> Self {
        let mut crossings = self.crossings.clone();
        crossings.push(record);
        AbstractDrawing::new(self.classes.clone(), self.edges.clone(), self.vertex_rotations.clone(), crossings)
    }

    pub fn classes(&self) -> &[Permutation] {
        &self.classes
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn vertex_rotations(&self) -> &BTreeMap<Vertex, CyclicOrder> {
        &self.vertex_rotations
    }

    pub fn rotation(&self, v: Vertex) -> Option<&CyclicOrder> {
        self.vertex_rotations.get(&v)
    }

    pub fn crossings(&self) -> &[CrossingRecord] {
        &self.crossings
    }

    pub fn crossing(&self, e: Edge, f: Edge) -> Option<&CrossingRecord> {
        self.index.get(&EdgePair::new(e, f)).map(|&k| &self.crossings[k])
    }

    pub fn cross(&self, e: Edge, f: Edge) -> bool {
        self.index.contains_key(&EdgePair::new(e, f))
    }

    pub fn crossing_pairs(&self) -> BTreeSet<EdgePair> {
        self.index.keys().copied().collect()
    }

    /// Crossing pairs with their rotations.
    pub fn crossing_map(&self) -> BTreeMap<EdgePair, CyclicOrder> {
        self.index.iter().map(|(k, &i)| (*k, self.crossings[i].rotation.clone())).collect()
    }

    pub fn neighbours(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.edges.iter().filter_map(|e| e.other(v)).collect()
    }

    /// Index of the class containing `v`.
    pub fn class_of(&self, v: Vertex) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&v))
    }

    /// Subdrawing on the edge set `es`.
    pub fn induce_edges(&self, es: &BTreeSet<Edge>) -> Result<Self, DrawingError> {
        if let Some(e) = es.iter().find(|e| !self.edges.contains(e)) {
            return Err(DrawingError::UnknownEdge(*e));
        }
        let keep: BTreeSet<Vertex> = es.iter().flat_map(|e| [e.0, e.1]).collect();
        let classes = self.classes.iter().map(|c| c.filter(|v| keep.contains(v))).collect();
        let vertex_rotations = keep
            .iter()
            .filter_map(|&v| {
                let rot = self.vertex_rotations.get(&v)?;
                Some((v, rot.restrict(|u| es.contains(&Edge::new(v, *u)))))
            })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .filter(|c| es.contains(&c.e) && es.contains(&c.f))
            .cloned()
            .collect();
        Ok(AbstractDrawing::new(classes, es.iter().copied(), vertex_rotations, crossings))
    }

    /// Subdrawing on the vertex set `us` and all edges inside it.
    pub fn induce_vertices(&self, us: &BTreeSet<Vertex>) -> Result<Self, DrawingError> {
        if let Some(v) = us.iter().find(|v| !self.vertices.contains(v)) {
            return Err(DrawingError::UnknownVertex(*v));
        }
        let es: BTreeSet<Edge> = self.edges.iter().filter(|e| us.contains(&e.0) && us.contains(&e.1)).copied().collect();
        let mut d = self.induce_edges(&es)?;
        d.classes = self.classes.iter().map(|c| c.filter(|v| us.contains(v))).collect();
        for &v in us {
            d.vertices.insert(v);
            if let Some(rot) = self.vertex_rotations.get(&v) {
                d.vertex_rotations.entry(v).or_insert_with(|| rot.restrict(|_| false));
            }
        }
        Ok(d)
    }

    /// Subdrawing on the vertices of the given subclasses (one per class, in
    /// class order); the result carries them as its classes.
    pub fn induce_classes(&self, classes: &[Permutation]) -> Result<Self, DrawingError> {
        let us: BTreeSet<Vertex> = classes.iter().flat_map(|c| c.iter().copied()).collect();
        Ok(self.induce_vertices(&us)?.with_classes(classes.to_vec()))
    }

    /// The rotation at `v` restricted to the edges toward `us`.
    pub fn rotation_at_vertex(&self, v: Vertex, us: &BTreeSet<Vertex>) -> Result<CyclicOrder, DrawingError> {
        if let Some(u) = us.iter().find(|u| !self.edges.contains(&Edge::new(v, **u))) {
            return Err(DrawingError::NotAdjacent(*u, v));
        }
        let rot = self.vertex_rotations.get(&v).ok_or(DrawingError::UnknownVertex(v))?;
        Ok(rot.restrict(|u| us.contains(u)))
    }

    /// Every broken local axiom.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !self.classes.is_empty() {
            let mut owner: HashMap<Vertex, usize> = HashMap::new();
            for (k, c) in self.classes.iter().enumerate() {
                for &v in c {
                    if owner.insert(v, k).is_some() {
                        out.push(Violation::VertexInTwoClasses { vertex: v });
                    }
                }
            }
            for &v in &self.vertices {
                if !owner.contains_key(&v) {
                    out.push(Violation::VertexOutsideClasses { vertex: v });
                }
            }
            for &e in &self.edges {
                if let (Some(a), Some(b)) = (owner.get(&e.0), owner.get(&e.1)) {
                    if a == b {
                        out.push(Violation::EdgeWithinClass { edge: e });
                    }
                }
            }
        }
        for &v in &self.vertices {
            let nbrs = self.neighbours(v);
            match self.vertex_rotations.get(&v) {
                Some(rot) => {
                    let listed: BTreeSet<Vertex> = rot.iter().copied().collect();
                    if listed != nbrs || listed.len() != rot.len() {
                        out.push(Violation::MalformedVertexRotation { vertex: v });
                    }
                }
                None if !nbrs.is_empty() => out.push(Violation::MalformedVertexRotation { vertex: v }),
                None => {}
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.crossings {
            let (e, f) = (c.e, c.f);
            if !seen.insert(c.key()) {
                out.push(Violation::DuplicateCrossing { e, f });
                continue;
            }
            for g in [e, f] {
                if !self.edges.contains(&g) {
                    out.push(Violation::UnknownCrossingEdge { edge: g });
                }
            }
            if e.is_adjacent(f) {
                out.push(Violation::AdjacentCrossing { e, f });
                continue;
            }
            let ends: BTreeSet<Vertex> = [e.0, e.1, f.0, f.1].into();
            let listed: BTreeSet<Vertex> = c.rotation.iter().copied().collect();
            if c.rotation.len() != 4 || listed != ends {
                out.push(Violation::MalformedCrossingRotation { e, f });
            } else if !c.rotation.interleaves(e.ends(), f.ends()).unwrap_or(false) {
                out.push(Violation::NotAlternating { e, f });
            }
        }
        out
    }
}

/// All vertices on a closed curve in cyclic order `bounding_order`, all edges
/// drawn on one side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OnePageDrawing {
    pub bounding_order: CyclicOrder,
    pub edges: BTreeSet<Edge>,
}

impl OnePageDrawing {
    pub fn new(bounding_order: CyclicOrder, edges: impl IntoIterator<Item = Edge>) -> Self {
        OnePageDrawing { bounding_order, edges: edges.into_iter().collect() }
    }
}

/// Edges between every pair of vertices in distinct classes.
pub fn complete_multipartite_edges(classes: &[Permutation]) -> BTreeSet<Edge> {
    let mut out = BTreeSet::new();
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            out.extend(bipartite_edges(a, b));
        }
    }
    out
}

/// `E(A, B)`.
pub fn bipartite_edges(a: &Permutation, b: &Permutation) -> BTreeSet<Edge> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| Edge::new(x, y))).collect()
}

fn positions(rho: &CyclicOrder) -> HashMap<Vertex, usize> {
    rho.iter().enumerate().map(|(k, &v)| (v, k)).collect()
}

/// The crossing (and its rotation) that a `rho`-drawing has on `(e, f)`.
fn onepage_crossing(pos: &HashMap<Vertex, usize>, rho: &CyclicOrder, e: Edge, f: Edge) -> Option<CyclicOrder> {
    if e.is_adjacent(f) {
        return None;
    }
    let p = |v: Vertex| pos[&v];
    if !chords_cross(p(e.0), p(e.1), p(f.0), p(f.1)) {
        return None;
    }
    Some(rho.restrict(|v| e.has(*v) || f.has(*v)))
}

/// The abstract drawing determined by a 1-page drawing.
pub fn from_onepage(p: &OnePageDrawing) -> AbstractDrawing {
    let rho = &p.bounding_order;
    let pos = positions(rho);
    let edges: Vec<Edge> = p.edges.iter().copied().collect();
    let mut crossings = Vec::new();
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            if let Some(rotation) = onepage_crossing(&pos, rho, e, f) {
                crossings.push(CrossingRecord::new(e, f, rotation));
            }
        }
    }
    let mut vertex_rotations = BTreeMap::new();
    for &w in rho.iter() {
        let nbrs: BTreeSet<Vertex> = edges.iter().filter_map(|e| e.other(w)).collect();
        if nbrs.is_empty() && !edges.is_empty() {
            continue;
        }
        let order: Vec<Vertex> = rho.after(&w).unwrap_or_default().into_iter().filter(|u| nbrs.contains(u)).collect();
        vertex_rotations.insert(w, CyclicOrder::new(order).expect("distinct"));
    }
    let mut d = AbstractDrawing::new(Vec::new(), edges, vertex_rotations, crossings);
    d.vertices.extend(rho.iter().copied());
    d
}

/// A disagreement between a drawing and a 1-page reference on one edge pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RhoMismatch {
    pub e: Edge,
    pub f: Edge,
    pub expected: Option<CyclicOrder>,
    pub actual: Option<CyclicOrder>,
}

/// Every edge pair of `es` on which `d` differs from the `rho`-drawing of
/// `es`, in crossing presence or crossing rotation. Edges missing from `d`
/// are reported against themselves.
pub fn rho_mismatches(d: &AbstractDrawing, rho: &CyclicOrder, es: &BTreeSet<Edge>) -> Vec<RhoMismatch> {
    rho_check(d, rho, es, usize::MAX)
}

fn rho_check(d: &AbstractDrawing, rho: &CyclicOrder, es: &BTreeSet<Edge>, limit: usize) -> Vec<RhoMismatch> {
    let pos = positions(rho);
    let mut out = Vec::new();
    let edges: Vec<Edge> = es.iter().copied().collect();
    for &e in &edges {
        if !d.has_edge(e) || !pos.contains_key(&e.0) || !pos.contains_key(&e.1) {
            out.push(RhoMismatch { e, f: e, expected: None, actual: None });
            if out.len() >= limit {
                return out;
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            let expected = onepage_crossing(&pos, rho, e, f);
            let actual = d.crossing(e, f).map(|c| c.rotation.clone());
            if expected != actual {
                out.push(RhoMismatch { e, f, expected, actual });
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

/// Whether `d` restricted to `es` is a `rho`-drawing: same crossings and the
/// same crossing rotations as [`from_onepage`].
pub fn is_rho_drawing(d: &AbstractDrawing, rho: &CyclicOrder, es: &BTreeSet<Edge>) -> bool {
    rho_check(d, rho, es, 1).is_empty()
}

/// `[A, B]` is natural: for `a <_A a'` and `b <_B b'`, `ab` crosses `a'b'`
/// with rotation `[[a, a', b, b']]`.
pub fn is_natural_pair(d: &AbstractDrawing, a: &Permutation, b: &Permutation) -> bool {
    let a = a.as_slice();
    let b = b.as_slice();
    for (i, &x) in a.iter().enumerate() {
        for &x2 in &a[i + 1..] {
            for (j, &y) in b.iter().enumerate() {
                for &y2 in &b[j + 1..] {
                    let want = CyclicOrder::new(vec![x, x2, y, y2]).expect("distinct");
                    match d.crossing(Edge::new(x, y), Edge::new(x2, y2)) {
                        Some(c) if c.rotation == want => {}
                        _ => return false,
                    }
                }
            }
        }
    }
    true
}

/// Whether `phi` carries the crossing pairs of `d1` exactly onto those of `d2`.
pub fn weak_iso(d1: &AbstractDrawing, d2: &AbstractDrawing, phi: &BTreeMap<Vertex, Vertex>) -> Result<bool, DrawingError> {
    let image: BTreeSet<Vertex> = phi.values().copied().collect();
    if phi.len() != d1.vertices.len() || d1.vertices.iter().any(|v| !phi.contains_key(v)) {
        return Err(DrawingError::NotABijection("domain differs from the first drawing's vertices".into()));
    }
    if image.len() != phi.len() || image != d2.vertices {
        return Err(DrawingError::NotABijection("image differs from the second drawing's vertices".into()));
    }
    let map = |e: Edge| Edge::new(phi[&e.0], phi[&e.1]);
    if let Some(e) = d1.edges.iter().find(|e| !d2.has_edge(map(**e))) {
        return Err(DrawingError::NotAdjacencyPreserving(*e));
    }
    if d1.edges.len() != d2.edges.len() {
        let inverse: BTreeMap<Vertex, Vertex> = phi.iter().map(|(&a, &b)| (b, a)).collect();
        let missing = d2.edges.iter().find(|e| !d1.has_edge(Edge::new(inverse[&e.0], inverse[&e.1])));
        return Err(DrawingError::NotAdjacencyPreserving(*missing.expect("edge counts differ")));
    }
    let mapped: BTreeSet<EdgePair> = d1.index.keys().map(|p| EdgePair::new(map(p.0), map(p.1))).collect();
    Ok(mapped == d2.crossing_pairs())
}

/// Identity map on the vertices of `d`.
pub fn identity_map(d: &AbstractDrawing) -> BTreeMap<Vertex, Vertex> {
    d.vertices.iter().map(|&v| (v, v)).collect()
}

/// Maps the `k`-th vertex of each class of `from` to the `k`-th vertex of the
/// same class of `to`.
pub fn class_position_map(from: &[Permutation], to: &[Permutation]) -> BTreeMap<Vertex, Vertex> {
    from.iter()
        .zip(to)
        .flat_map(|(a, b)| a.iter().copied().zip(b.iter().copied()))
        .collect()
}

/// The classes `i(1..n)` for `i` in `1..=m`.
pub fn standard_classes(m: usize, n: usize) -> Vec<Permutation> {
    (1..=m as u32)
        .map(|i| Permutation::new((1..=n as u32).map(|k| Vertex::new(i, k)).collect()).expect("distinct"))
        .collect()
}
