//! Realizability of rotation systems by simple drawings on the sphere.
//!
//! The search inserts edges one at a time into a planar map. The new edge
//! leaves each endpoint through the gap its rotation forces, and walks from
//! face to face crossing only edges that are independent of it and not yet
//! crossed by it. Exhausting the search proves unrealizability; any
//! completed map is returned as a [`PlanarizedWitness`].

mod k4;
mod map;
mod witness;

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{CyclicOrder, Vertex};
use crate::drawing::{AbstractDrawing, Edge, EdgePair};

pub use k4::{build_k4_table, k4_system, k4_table, K4Entry, K4Table, K4Verdict};
pub use witness::{crossing_data, crossings_of_witness, PlanarizedWitness, SegmentPath, WitnessDart, WitnessNode};

use map::{twin, Map, NONE};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
const MAX_EDGES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizerError {
    #[error("search budget of {0} node expansions exceeded")]
    BudgetExceeded(u64),
    #[error("invalid rotation system: {0}")]
    InvalidRotationSystem(String),
    #[error("graph too large for the realizer: {0} edges (limit {MAX_EDGES})")]
    TooLarge(usize),
    #[error("internal error: produced witness fails its own check: {0}")]
    BrokenWitness(String),
}

/// Crossing pairs with the rotation at each crossing.
pub type CrossingData = BTreeMap<EdgePair, CyclicOrder>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Maximum number of route-search node expansions.
    pub budget: u64,
    /// Shuffles edge insertion order and route choices when set.
    pub seed: Option<u64>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, seed: None }
    }
}

impl SearchConfig {
    pub fn with_seed(seed: u64) -> Self {
        SearchConfig { seed: Some(seed), ..Default::default() }
    }
}

/// A graph together with the clockwise cyclic order of neighbours at every
/// vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RotationSystemJson")]
pub struct RotationSystem {
    pub vertices: Vec<Vertex>,
    pub edges: BTreeSet<Edge>,
    pub rotation: BTreeMap<Vertex, CyclicOrder>,
}

#[derive(Deserialize)]
struct RotationSystemJson {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    rotation: BTreeMap<Vertex, CyclicOrder>,
}

impl TryFrom<RotationSystemJson> for RotationSystem {
    type Error = RealizerError;
    fn try_from(raw: RotationSystemJson) -> Result<Self, Self::Error> {
        RotationSystem::new(raw.vertices, raw.edges, raw.rotation)
    }
}

impl RotationSystem {
    pub fn new(
        vertices: Vec<Vertex>,
        edges: impl IntoIterator<Item = Edge>,
        rotation: BTreeMap<Vertex, CyclicOrder>,
    ) -> Result<Self, RealizerError> {
        let bad = |m: String| Err(RealizerError::InvalidRotationSystem(m));
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        let vset: BTreeSet<Vertex> = vertices.iter().copied().collect();
        if vset.len() != vertices.len() {
            return bad("repeated vertex".into());
        }
        for e in &edges {
            let (a, b) = e.ends();
            if !vset.contains(&a) || !vset.contains(&b) {
                return bad(format!("edge {e} has an endpoint outside the vertex list"));
            }
        }
        for &v in &vertices {
            let nbrs: BTreeSet<Vertex> = edges.iter().filter_map(|e| e.other(v)).collect();
            let listed: BTreeSet<Vertex> = rotation.get(&v).map(|r| r.iter().copied().collect()).unwrap_or_default();
            if nbrs != listed {
                return bad(format!("rotation at {v} does not list exactly its neighbours"));
            }
        }
        if let Some(v) = rotation.keys().find(|v| !vset.contains(v)) {
            return bad(format!("rotation given for unknown vertex {v}"));
        }
        Ok(RotationSystem { vertices, edges, rotation })
    }

    /// A rotation system of the complete graph on the keys of `rotation`.
    pub fn complete(rotation: BTreeMap<Vertex, CyclicOrder>) -> Result<Self, RealizerError> {
        let vertices: Vec<Vertex> = rotation.keys().copied().collect();
        let mut edges = BTreeSet::new();
        for (k, &a) in vertices.iter().enumerate() {
            for &b in &vertices[k + 1..] {
                edges.insert(Edge::new(a, b));
            }
        }
        RotationSystem::new(vertices, edges, rotation)
    }

    /// The vertex rotations of a drawing.
    pub fn of_drawing(d: &AbstractDrawing) -> Result<Self, RealizerError> {
        let rotation = d
            .vertices()
            .iter()
            .map(|&v| (v, d.rotation(v).cloned().unwrap_or_default()))
            .collect();
        RotationSystem::new(d.vertices().iter().copied().collect(), d.edges().iter().copied(), rotation)
    }

    /// Restriction to the subgraph induced by `us`.
    pub fn restrict(&self, us: &BTreeSet<Vertex>) -> Self {
        let vertices = self.vertices.iter().copied().filter(|v| us.contains(v)).collect();
        let edges = self.edges.iter().copied().filter(|e| us.contains(&e.ends().0) && us.contains(&e.ends().1)).collect();
        let rotation = self
            .rotation
            .iter()
            .filter(|(v, _)| us.contains(v))
            .map(|(&v, r)| (v, r.restrict(|u| us.contains(u))))
            .collect();
        RotationSystem { vertices, edges, rotation }
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertices.len();
        self.edges.len() == n * (n.saturating_sub(1)) / 2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Realization {
    Witness(Box<PlanarizedWitness>),
    Unrealizable,
}

impl Realization {
    pub fn is_realizable(&self) -> bool {
        matches!(self, Realization::Witness(_))
    }

    pub fn witness(&self) -> Option<&PlanarizedWitness> {
        match self {
            Realization::Witness(w) => Some(w),
            Realization::Unrealizable => None,
        }
    }
}

/// Finds one drawing with rotation system `rs`, or proves there is none.
pub fn realize(rs: &RotationSystem, cfg: &SearchConfig) -> Result<Realization, RealizerError> {
    let mut search = Search::new(rs, cfg, Mode::First)?;
    let start = search.empty_map();
    search.step(&start, 0, 0)?;
    match search.found.take() {
        Some(m) => {
            let w = PlanarizedWitness::from_map(&m, &search.vertices, &search.edges);
            let problems = w.check(rs);
            if let Some(p) = problems.first() {
                return Err(RealizerError::BrokenWitness(p.clone()));
            }
            Ok(Realization::Witness(Box::new(w)))
        }
        None => Ok(Realization::Unrealizable),
    }
}

/// The crossing data of every simple drawing with rotation system `rs`,
/// deduplicated. Empty iff `rs` is unrealizable. Components are drawn
/// independently of each other.
pub fn enumerate_completions(rs: &RotationSystem, cfg: &SearchConfig) -> Result<BTreeSet<CrossingData>, RealizerError> {
    let mut search = Search::new(rs, cfg, Mode::All)?;
    let start = search.empty_map();
    search.step(&start, 0, 0)?;
    Ok(search.completions)
}

/// Exact realizability of a complete-graph rotation system, after checking
/// every 4-vertex subsystem against the K4 table.
pub fn is_realizable_ks(rs: &RotationSystem, cfg: &SearchConfig) -> Result<bool, RealizerError> {
    if rs.vertices.len() < 3 || !rs.is_complete() {
        return Err(RealizerError::InvalidRotationSystem("expected a complete graph on at least 3 vertices".into()));
    }
    if !all_k4_realizable(rs) {
        return Ok(false);
    }
    Ok(realize(rs, cfg)?.is_realizable())
}

/// Whether every 4-vertex subsystem of a complete rotation system is realizable.
pub fn all_k4_realizable(rs: &RotationSystem) -> bool {
    use itertools::Itertools;
    let table = k4_table();
    rs.vertices.iter().copied().combinations(4).all(|quad| {
        let sub = rs.restrict(&quad.into_iter().collect());
        matches!(table.lookup(&sub), Some((K4Verdict::Realizable, _)))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    First,
    All,
}

struct Search {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    ends: Vec<(u32, u32)>,
    /// Clockwise neighbour indices at each vertex.
    rot: Vec<Vec<u32>>,
    /// Edge id between two vertex indices.
    edge_id: BTreeMap<(u32, u32), u16>,
    /// Edges sharing an endpoint with each edge (itself included).
    adjacent: Vec<u128>,
    priority: Vec<u16>,
    mode: Mode,
    budget: u64,
    expansions: u64,
    rng: Option<ChaCha8Rng>,
    found: Option<Map>,
    completions: BTreeSet<CrossingData>,
}

impl Search {
    fn new(rs: &RotationSystem, cfg: &SearchConfig, mode: Mode) -> Result<Self, RealizerError> {
        if rs.edges.len() > MAX_EDGES {
            return Err(RealizerError::TooLarge(rs.edges.len()));
        }
        let vertices = rs.vertices.clone();
        let idx: BTreeMap<Vertex, u32> = vertices.iter().enumerate().map(|(k, &v)| (v, k as u32)).collect();
        let edges: Vec<Edge> = rs.edges.iter().copied().collect();
        let ends: Vec<(u32, u32)> = edges.iter().map(|e| (idx[&e.ends().0], idx[&e.ends().1])).collect();
        let mut edge_id = BTreeMap::new();
        for (k, &(a, b)) in ends.iter().enumerate() {
            edge_id.insert((a, b), k as u16);
            edge_id.insert((b, a), k as u16);
        }
        let rot = vertices
            .iter()
            .map(|v| rs.rotation.get(v).map(|r| r.iter().map(|u| idx[u]).collect()).unwrap_or_default())
            .collect();
        let adjacent = ends
            .iter()
            .map(|&(a, b)| {
                ends.iter()
                    .enumerate()
                    .filter(|(_, &(c, d))| a == c || a == d || b == c || b == d)
                    .fold(0u128, |m, (k, _)| m | 1 << k)
            })
            .collect();
        let mut rng = cfg.seed.map(ChaCha8Rng::seed_from_u64);
        let mut priority: Vec<u16> = (0..edges.len() as u16).collect();
        if let Some(r) = rng.as_mut() {
            priority.shuffle(r);
        }
        Ok(Search {
            vertices,
            edges,
            ends,
            rot,
            edge_id,
            adjacent,
            priority,
            mode,
            budget: cfg.budget,
            expansions: 0,
            rng,
            found: None,
            completions: BTreeSet::new(),
        })
    }

    fn empty_map(&self) -> Map {
        Map::with_vertices(self.vertices.len())
    }

    /// The next edge to insert: the first by priority touching a drawn
    /// vertex, else the first not yet inserted.
    fn next_edge(&self, map: &Map, inserted: u128) -> u16 {
        let placed = |v: u32| map.node_dart[v as usize] != NONE;
        let mut fallback = None;
        for &e in &self.priority {
            if inserted >> e & 1 == 1 {
                continue;
            }
            let (a, b) = self.ends[e as usize];
            if placed(a) || placed(b) {
                return e;
            }
            fallback.get_or_insert(e);
        }
        fallback.expect("an edge remains")
    }

    /// The dart at `u` before which the edge toward `w` must leave.
    fn forced_corner(&self, map: &Map, u: u32, w: u32, inserted: u128) -> u32 {
        let rot = &self.rot[u as usize];
        let k = rot.iter().position(|&x| x == w).expect("neighbour");
        let succ = (1..rot.len())
            .map(|s| rot[(k + s) % rot.len()])
            .find(|&x| inserted >> self.edge_id[&(u, x)] & 1 == 1)
            .expect("u has an inserted edge");
        let e = self.edge_id[&(u, succ)];
        map.rotation(u).into_iter().find(|&d| map.edge[d as usize] == e).expect("dart of inserted edge")
    }

    fn tick(&mut self) -> Result<(), RealizerError> {
        self.expansions += 1;
        if self.expansions > self.budget {
            Err(RealizerError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }

    /// Inserts the remaining edges; true once the search should stop.
    fn step(&mut self, map: &Map, k: usize, inserted: u128) -> Result<bool, RealizerError> {
        if k == self.edges.len() {
            return Ok(self.record(map));
        }
        self.tick()?;
        let e = self.next_edge(map, inserted);
        let (a, b) = self.ends[e as usize];
        let placed = |v: u32| map.node_dart[v as usize] != NONE;
        let now = inserted | 1 << e;
        if !placed(a) && !placed(b) {
            let mut m = map.clone();
            m.add_segment(a, NONE, b, NONE, e, b, a);
            return self.step(&m, k + 1, now);
        }
        let (u, v) = if placed(a) { (a, b) } else { (b, a) };
        let pen = self.forced_corner(map, u, v, inserted);
        let target = placed(v).then(|| self.forced_corner(map, v, u, inserted));
        let route = Route { k, e, u, v, inserted };
        self.route(map, &route, u, pen, target, 0)
    }

    fn route(&mut self, map: &Map, r: &Route, node: u32, pen: u32, target: Option<u32>, crossed: u128) -> Result<bool, RealizerError> {
        self.tick()?;
        let face = map.face_darts(pen);
        let done = r.inserted | 1 << r.e;
        match target {
            Some(cv) if face.contains(&cv) => {
                let mut m = map.clone();
                m.add_segment(node, pen, r.v, cv, r.e, r.v, r.u);
                if self.step(&m, r.k + 1, done)? {
                    return Ok(true);
                }
            }
            None => {
                let mut m = map.clone();
                m.add_segment(node, pen, r.v, NONE, r.e, r.v, r.u);
                if self.step(&m, r.k + 1, done)? {
                    return Ok(true);
                }
            }
            Some(_) => {}
        }
        let blocked = self.adjacent[r.e as usize] | crossed;
        let mut options: Vec<u32> = face.into_iter().filter(|&s| blocked >> map.edge[s as usize] & 1 == 0).collect();
        if let Some(rng) = self.rng.as_mut() {
            options.shuffle(rng);
        }
        for s in options {
            let g = map.edge[s as usize];
            let mut m = map.clone();
            debug_assert_ne!(pen, twin(s));
            let (x, n0) = m.split(s);
            let target = target.map(|cv| if cv == twin(s) { twin(n0) } else { cv });
            m.add_segment(node, pen, x, n0, r.e, r.v, r.u);
            if self.route(&m, r, x, twin(s), target, crossed | 1 << g)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn record(&mut self, map: &Map) -> bool {
        match self.mode {
            Mode::First => {
                self.found = Some(map.clone());
                true
            }
            Mode::All => {
                self.completions.insert(self.crossing_data(map));
                false
            }
        }
    }

    fn crossing_data(&self, map: &Map) -> CrossingData {
        (map.real..map.node_count() as u32)
            .map(|x| {
                let rot = map.rotation(x);
                let e = self.edges[map.edge[rot[0] as usize] as usize];
                let f = self.edges[map.edge[rot[1] as usize] as usize];
                let ends = rot.iter().map(|&d| self.vertices[map.toward[d as usize] as usize]).collect();
                (EdgePair::new(e, f), CyclicOrder::new(ends).expect("four distinct ends"))
            })
            .collect()
    }
}

struct Route {
    k: usize,
    e: u16,
    u: u32,
    v: u32,
    inserted: u128,
}
