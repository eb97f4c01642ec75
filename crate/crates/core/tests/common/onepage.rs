//! Random 1-page drawings of `K_{a,b}` and single-mutation corruptions.

use rand::seq::SliceRandom;
use rand::Rng;

use unavoidable::drawing::{bipartite_edges, from_onepage, CrossingRecord, OnePageDrawing};
use unavoidable::{AbstractDrawing, CyclicOrder, Edge, Permutation, Sign, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    None,
    DropCrossing,
    ReverseRotation,
    MoveCrossing,
    SwapQueryOrder,
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub drawing: AbstractDrawing,
    pub a: Permutation,
    pub b: Permutation,
    pub mutation: Mutation,
}

fn class(c: u32, size: usize) -> Permutation {
    Permutation::new((1..=size as u32).map(|k| Vertex::new(c, k)).collect()).unwrap()
}

fn sign(rng: &mut impl Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A 1-page drawing on up to `max + max` vertices, queried with its class
/// orders, then possibly corrupted once.
pub fn instance(rng: &mut impl Rng, max: usize) -> Instance {
    let (na, nb) = (rng.gen_range(1..=max), rng.gen_range(1..=max));
    let (a, b) = (class(1, na), class(2, nb));
    let rho = if rng.gen_bool(0.6) {
        Permutation::concat([(sign(rng), &a), (sign(rng), &b)]).unwrap().into_vec()
    } else {
        let mut all: Vec<Vertex> = a.iter().chain(b.iter()).copied().collect();
        all.shuffle(rng);
        all
    };
    let rho = CyclicOrder::new(rho).unwrap();
    let drawing = from_onepage(&OnePageDrawing::new(rho, bipartite_edges(&a, &b))).with_classes(vec![a.clone(), b.clone()]);
    let mut inst = Instance { drawing, a, b, mutation: Mutation::None };
    if rng.gen_bool(0.5) {
        mutate(&mut inst, rng);
    }
    inst
}

fn mutate(inst: &mut Instance, rng: &mut impl Rng) {
    let kinds = [Mutation::DropCrossing, Mutation::ReverseRotation, Mutation::MoveCrossing, Mutation::SwapQueryOrder];
    let kind = *kinds.choose(rng).unwrap();
    let crossings = inst.drawing.crossings().to_vec();
    if kind == Mutation::SwapQueryOrder {
        let target = if rng.gen_bool(0.5) { &mut inst.a } else { &mut inst.b };
        if target.len() < 2 {
            return;
        }
        let k = rng.gen_range(0..target.len() - 1);
        let mut items = target.as_slice().to_vec();
        items.swap(k, k + 1);
        *target = Permutation::new(items).unwrap();
        inst.mutation = kind;
        return;
    }
    let Some(x) = crossings.choose(rng) else { return };
    inst.drawing = match kind {
        Mutation::DropCrossing => inst.drawing.without_crossing(x.e, x.f),
        Mutation::ReverseRotation => inst.drawing.with_crossing(CrossingRecord::new(x.e, x.f, x.rotation.reversed())),
        Mutation::MoveCrossing => {
            // ab x a'b' becomes ab' x a'b.
            let ((a, b), (a2, b2)) = (x.e.ends(), x.f.ends());
            let (e, f) = (Edge::new(a, b2), Edge::new(a2, b));
            let rotation = CyclicOrder::new(vec![a, a2, b2, b]).unwrap();
            inst.drawing.without_crossing(x.e, x.f).with_crossing(CrossingRecord::new(e, f, rotation))
        }
        _ => unreachable!(),
    };
    inst.mutation = kind;
}
