//! Classification of the 16 labelled rotation systems of `K4`.
//!
//! Vertex `i` has neighbours `a < b < c` and rotation `[[a,b,c]]` (bit 0) or
//! `[[a,c,b]]` (bit 1); the system index reads the bits with vertex 1 as the
//! most significant.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{enumerate_completions, RealizerError, RotationSystem, SearchConfig};
use crate::combinatorics::{CyclicOrder, Vertex};
use crate::drawing::{Edge, EdgePair};

pub const K4_TABLE_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum K4Verdict {
    Realizable,
    NonRealizable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Entry {
    pub index: usize,
    pub rotation: BTreeMap<Vertex, CyclicOrder>,
    pub verdict: K4Verdict,
    /// The crossing pair shared by every completion, if any.
    pub crossing: Option<EdgePair>,
    /// Distinct completions (crossing data) found.
    pub completions: usize,
    /// Distinct crossing sets among the completions.
    pub crossing_sets: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K4Table {
    pub version: u32,
    pub entries: Vec<K4Entry>,
}

/// The labelled `K4` rotation system with the given index in `0..16`.
pub fn k4_system(index: usize) -> RotationSystem {
    assert!(index < 16);
    let rotation = (1..=4u32)
        .map(|i| {
            let nbrs: Vec<u32> = (1..=4).filter(|&j| j != i).collect();
            let bit = index >> (4 - i) & 1;
            let order = if bit == 0 { [nbrs[0], nbrs[1], nbrs[2]] } else { [nbrs[0], nbrs[2], nbrs[1]] };
            (Vertex::bare(i), CyclicOrder::new(order.map(Vertex::bare).to_vec()).expect("distinct"))
        })
        .collect();
    RotationSystem::complete(rotation).expect("complete K4")
}

/// Runs the realizer on all 16 systems.
pub fn build_k4_table(cfg: &SearchConfig) -> Result<K4Table, RealizerError> {
    let entries = (0..16)
        .map(|index| {
            let rs = k4_system(index);
            let all = enumerate_completions(&rs, cfg)?;
            let sets: BTreeSet<BTreeSet<EdgePair>> = all.iter().map(|c| c.keys().copied().collect()).collect();
            let crossing = match sets.iter().next() {
                Some(s) if sets.len() == 1 => s.iter().next().copied(),
                _ => None,
            };
            Ok(K4Entry {
                index,
                rotation: rs.rotation,
                verdict: if all.is_empty() { K4Verdict::NonRealizable } else { K4Verdict::Realizable },
                crossing,
                completions: all.len(),
                crossing_sets: sets.len(),
            })
        })
        .collect::<Result<_, RealizerError>>()?;
    Ok(K4Table { version: K4_TABLE_VERSION, entries })
}

/// The table, computed once per process.
pub fn k4_table() -> &'static K4Table {
    static TABLE: OnceLock<K4Table> = OnceLock::new();
    TABLE.get_or_init(|| build_k4_table(&SearchConfig::default()).expect("K4 table fits the default budget"))
}

impl K4Table {
    pub fn realizable_count(&self) -> usize {
        self.entries.iter().filter(|e| e.verdict == K4Verdict::Realizable).count()
    }

    /// Looks up a rotation system on any four vertices, relabelled to `1..4`
    /// by vertex order; the crossing pair is mapped back to the input labels.
    pub fn lookup(&self, rs: &RotationSystem) -> Option<(K4Verdict, Option<EdgePair>)> {
        let mut vs = rs.vertices.clone();
        vs.sort();
        if vs.len() != 4 || !rs.is_complete() {
            return None;
        }
        let rank = |v: &Vertex| vs.iter().position(|x| x == v).expect("vertex") as u32 + 1;
        let mut index = 0;
        for (k, v) in vs.iter().enumerate() {
            let rot = rs.rotation.get(v)?;
            let relabelled: Vec<u32> = rot.iter().map(rank).collect();
            let mut nbrs = relabelled.clone();
            nbrs.sort();
            let ascending = CyclicOrder::new(nbrs).expect("distinct");
            let bit = usize::from(CyclicOrder::new(relabelled).expect("distinct") != ascending);
            index |= bit << (3 - k);
        }
        let entry = &self.entries[index];
        let back = |e: Edge| {
            let (a, b) = e.ends();
            let name = |x: Vertex| vs[x.class() as usize - 1];
            Edge::new(name(a), name(b))
        };
        Some((entry.verdict, entry.crossing.map(|p| EdgePair::new(back(p.0), back(p.1)))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn system_indexing_round_trips() {
        let t = k4_table();
        for index in 0..16 {
            assert_eq!(t.entries[index].index, index);
            let (verdict, _) = t.lookup(&k4_system(index)).unwrap();
            assert_eq!(verdict, t.entries[index].verdict);
        }
        // The non-realizable system of four vertices all "ascending" but one.
        let rs = RotationSystem::complete(
            [(1, [2, 3, 4]), (2, [3, 4, 1]), (3, [4, 1, 2]), (4, [1, 3, 2])]
                .into_iter()
                .map(|(v, r)| (Vertex::bare(v), CyclicOrder::new(r.map(Vertex::bare).to_vec()).unwrap()))
                .collect(),
        )
        .unwrap();
        assert_eq!(t.lookup(&rs).unwrap().0, K4Verdict::NonRealizable);
    }

    #[test]
    fn realizable_entries_have_one_crossing_verdict() {
        for e in &k4_table().entries {
            if e.verdict == K4Verdict::Realizable {
                assert_eq!(e.crossing_sets, 1, "entry {}", e.index);
            }
        }
    }

    #[test]
    fn relabelling_permutes_entries() {
        let t = k4_table();
        for index in 0..16 {
            let rs = k4_system(index);
            for perm in (1..=4u32).permutations(4) {
                let phi = |v: &Vertex| Vertex::new(10, perm[v.class() as usize - 1]);
                let rotation = rs.rotation.iter().map(|(v, r)| (phi(v), r.map(phi).unwrap())).collect();
                let image = RotationSystem::complete(rotation).unwrap();
                let (verdict, crossing) = t.lookup(&image).unwrap();
                assert_eq!(verdict, t.entries[index].verdict);
                let mapped = t.entries[index].crossing.map(|p| {
                    let me = |e: Edge| Edge::new(phi(&e.ends().0), phi(&e.ends().1));
                    EdgePair::new(me(p.0), me(p.1))
                });
                assert_eq!(crossing, mapped);
            }
        }
    }
}
