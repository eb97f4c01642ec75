use std::collections::BTreeMap;

use unavoidable::realizer::{build_k4_table, k4_system, K4Table, K4Verdict, RotationSystem, SearchConfig};
use unavoidable::{CyclicOrder, Vertex};

const GOLDEN: &str = include_str!("../data/k4_table.json");

fn golden() -> K4Table {
    serde_json::from_str(GOLDEN).unwrap()
}

fn unrealizable_k4_system() -> RotationSystem {
    let rot = |v: u32, ns: [u32; 3]| (Vertex::bare(v), CyclicOrder::new(ns.map(Vertex::bare).to_vec()).unwrap());
    let rotation: BTreeMap<_, _> =
        [rot(1, [2, 3, 4]), rot(2, [3, 4, 1]), rot(3, [4, 1, 2]), rot(4, [1, 3, 2])].into_iter().collect();
    RotationSystem::complete(rotation).unwrap()
}

#[test]
fn regeneration_matches_golden_bytes() {
    let fresh = build_k4_table(&SearchConfig::default()).unwrap();
    let mut text = serde_json::to_string_pretty(&fresh).unwrap();
    text.push('\n');
    assert_eq!(text, GOLDEN);
    let again = build_k4_table(&SearchConfig::default()).unwrap();
    assert_eq!(fresh, again);
}

#[test]
fn realizable_entries_have_one_crossing_verdict() {
    let table = golden();
    assert_eq!(table.entries.len(), 16);
    for e in &table.entries {
        assert_eq!(e.rotation, k4_system(e.index).rotation);
        match e.verdict {
            K4Verdict::Realizable => {
                assert!(e.completions > 0);
                assert_eq!(e.crossing_sets, 1, "entry {}", e.index);
            }
            K4Verdict::NonRealizable => assert_eq!(e.completions, 0),
        }
    }
}

#[test]
fn unrealizable_k4_system_is_non_realizable_in_the_table() {
    let (verdict, crossing) = golden().lookup(&unrealizable_k4_system()).unwrap();
    assert_eq!(verdict, K4Verdict::NonRealizable);
    assert_eq!(crossing, None);
}
