mod common;

use std::collections::BTreeSet;

use common::brute::{all_rotation_systems, brute_completions};
use unavoidable::drawing::{complete_multipartite_edges, standard_classes};
use unavoidable::realizer::{enumerate_completions, k4_system, SearchConfig};
use unavoidable::{Permutation, Vertex};

#[test]
fn k4_completions_match_brute_force() {
    for index in 0..16 {
        let rs = k4_system(index);
        let fast = enumerate_completions(&rs, &SearchConfig::default()).unwrap();
        assert_eq!(fast, brute_completions(&rs), "system {index}");
    }
}

#[test]
fn k23_completions_match_brute_force() {
    let classes = vec![standard_classes(2, 2)[0].clone(), standard_classes(2, 3)[1].clone()];
    let edges = complete_multipartite_edges(&classes);
    let vertices: Vec<Vertex> = classes.iter().flat_map(|c| c.iter().copied()).collect();
    for rs in all_rotation_systems(&vertices, &edges) {
        let fast = enumerate_completions(&rs, &SearchConfig::default()).unwrap();
        assert_eq!(fast, brute_completions(&rs), "{:?}", rs.rotation);
    }
}

#[test]
fn c4_plus_pendant_matches_brute_force() {
    // A non-complete graph with a degree-1 vertex and a cycle.
    let v: Vec<Vertex> = (1..=5).map(Vertex::bare).collect();
    let single = |x: Vertex| Permutation::new(vec![x]).unwrap();
    let mut edges = BTreeSet::new();
    for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)] {
        edges.extend(complete_multipartite_edges(&[single(v[a]), single(v[b])]));
    }
    for rs in all_rotation_systems(&v, &edges) {
        let fast = enumerate_completions(&rs, &SearchConfig::default()).unwrap();
        assert_eq!(fast, brute_completions(&rs));
    }
}
