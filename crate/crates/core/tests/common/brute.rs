//! Brute-force drawing enumeration, independent of the realizer: choose which
//! independent edge pairs cross, the order of crossings along every edge and
//! the orientation of every crossing, then keep the planarizations of genus 0.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use unavoidable::drawing::{Edge, EdgePair};
use unavoidable::realizer::{CrossingData, RotationSystem};
use unavoidable::{CyclicOrder, Vertex};

pub fn brute_completions(rs: &RotationSystem) -> BTreeSet<CrossingData> {
    let edges: Vec<Edge> = rs.edges.iter().copied().collect();
    let pairs: Vec<(usize, usize)> = (0..edges.len())
        .tuple_combinations()
        .filter(|&(i, j)| !edges[i].is_adjacent(edges[j]))
        .collect();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let chosen: Vec<(usize, usize)> = (0..pairs.len()).filter(|k| mask >> k & 1 == 1).map(|k| pairs[k]).collect();
        // Crossing ids on each edge.
        let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
        for (x, &(i, j)) in chosen.iter().enumerate() {
            on_edge[i].push(x);
            on_edge[j].push(x);
        }
        let orders: Vec<Vec<Vec<usize>>> = on_edge
            .iter()
            .map(|xs| xs.iter().copied().permutations(xs.len()).collect())
            .collect();
        for order in orders.iter().multi_cartesian_product() {
            for orient in 0u64..1 << chosen.len() {
                if let Some(data) = planarize(rs, &edges, &chosen, &order, orient) {
                    out.insert(data);
                }
            }
        }
    }
    out
}

fn planarize(
    rs: &RotationSystem,
    edges: &[Edge],
    chosen: &[(usize, usize)],
    order: &[&Vec<usize>],
    orient: u64,
) -> Option<CrossingData> {
    let nv = rs.vertices.len();
    let vid: BTreeMap<Vertex, usize> = rs.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    // Darts: (tail, edge, forward?) with twin = index ^ 1.
    let mut tail: Vec<usize> = Vec::new();
    let mut dart_edge: Vec<usize> = Vec::new();
    let mut forward: Vec<bool> = Vec::new();
    // At each crossing node: for each of its two edges, (forward dart, backward dart).
    let mut at_cross: Vec<BTreeMap<usize, (usize, usize)>> = vec![BTreeMap::new(); chosen.len()];
    let mut at_vertex: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); nv];
    for (ei, e) in edges.iter().enumerate() {
        let (a, b) = e.ends();
        let mut path = vec![vid[&a]];
        path.extend(order[ei].iter().map(|x| nv + x));
        path.push(vid[&b]);
        for w in path.windows(2) {
            let d = tail.len();
            tail.extend([w[0], w[1]]);
            dart_edge.extend([ei, ei]);
            forward.extend([true, false]);
            for (dart, node) in [(d, w[0]), (d + 1, w[1])] {
                if node < nv {
                    at_vertex[node].insert(ei, dart);
                } else {
                    let slot = at_cross[node - nv].entry(ei).or_insert((usize::MAX, usize::MAX));
                    if forward[dart] {
                        slot.0 = dart;
                    } else {
                        slot.1 = dart;
                    }
                }
            }
        }
    }
    let mut rot: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in rs.vertices.iter().enumerate() {
        let r = rs.rotation.get(&v).map(|r| r.iter().copied().collect::<Vec<_>>()).unwrap_or_default();
        let eid = |u: Vertex| edges.iter().position(|&e| e == Edge::new(u, v)).unwrap();
        rot.push(r.into_iter().map(|u| at_vertex[k][&eid(u)]).collect());
    }
    for (x, &(i, j)) in chosen.iter().enumerate() {
        let (ef, eb) = at_cross[x][&i];
        let (ff, fb) = at_cross[x][&j];
        rot.push(if orient >> x & 1 == 0 { vec![ef, ff, eb, fb] } else { vec![ef, fb, eb, ff] });
    }
    let mut next = vec![0; tail.len()];
    for r in &rot {
        for (k, &d) in r.iter().enumerate() {
            next[d] = r[(k + 1) % r.len()];
        }
    }
    let mut seen = vec![false; tail.len()];
    let mut faces = 0;
    for s in 0..tail.len() {
        if !seen[s] {
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = next[d ^ 1];
            }
        }
    }
    let nodes = nv + chosen.len();
    if nodes + faces != tail.len() / 2 + 2 {
        return None;
    }
    let toward = |d: usize| {
        let (a, b) = edges[dart_edge[d]].ends();
        if forward[d] { b } else { a }
    };
    Some(
        chosen
            .iter()
            .enumerate()
            .map(|(x, &(i, j))| {
                let r = &rot[nv + x];
                (EdgePair::new(edges[i], edges[j]), CyclicOrder::new(r.iter().map(|&d| toward(d)).collect()).unwrap())
            })
            .collect(),
    )
}

/// All rotation systems of the graph with the given edges (every vertex gets
/// every cyclic order of its neighbours).
pub fn all_rotation_systems(vertices: &[Vertex], edges: &BTreeSet<Edge>) -> Vec<RotationSystem> {
    let choices: Vec<Vec<CyclicOrder>> = vertices
        .iter()
        .map(|&v| {
            let nbrs: Vec<Vertex> = edges.iter().filter_map(|e| e.other(v)).collect();
            if nbrs.len() <= 2 {
                return vec![CyclicOrder::new(nbrs).unwrap()];
            }
            nbrs[1..]
                .iter()
                .copied()
                .permutations(nbrs.len() - 1)
                .map(|p| {
                    let mut o = vec![nbrs[0]];
                    o.extend(p);
                    CyclicOrder::new(o).unwrap()
                })
                .collect()
        })
        .collect();
    choices
        .iter()
        .multi_cartesian_product()
        .map(|combo| {
            let rotation = vertices.iter().copied().zip(combo.into_iter().cloned()).collect();
            RotationSystem::new(vertices.to_vec(), edges.iter().copied(), rotation).unwrap()
        })
        .collect()
}
