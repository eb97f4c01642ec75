mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::onepage::{instance, Mutation};
use unavoidable::drawing::{bipartite_edges, is_natural_pair, is_rho_drawing};
use unavoidable::{CyclicOrder, Permutation, Sign};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn natural_pair_iff_onepage(seed in any::<u64>()) {
        let inst = instance(&mut ChaCha8Rng::seed_from_u64(seed), 8);
        prop_assert!(inst.drawing.validate().is_empty());
        let rho = CyclicOrder::from_permutation(&Permutation::concat([(Sign::Plus, &inst.a), (Sign::Plus, &inst.b)]).unwrap());
        let onepage = is_rho_drawing(&inst.drawing, &rho, &bipartite_edges(&inst.a, &inst.b));
        prop_assert_eq!(is_natural_pair(&inst.drawing, &inst.a, &inst.b), onepage, "{:?}", inst.mutation);
    }
}

#[test]
fn generator_reaches_both_verdicts_and_every_mutation() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = std::collections::BTreeSet::new();
    let (mut yes, mut no) = (0, 0);
    for _ in 0..2000 {
        let inst = instance(&mut rng, 8);
        seen.insert(format!("{:?}", inst.mutation));
        if is_natural_pair(&inst.drawing, &inst.a, &inst.b) {
            yes += 1;
        } else {
            no += 1;
        }
    }
    assert!(yes > 100 && no > 100, "{yes} / {no}");
    assert_eq!(seen.len(), 5);
    let _ = Mutation::None;
}
