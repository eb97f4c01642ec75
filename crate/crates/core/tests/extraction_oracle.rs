mod common;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::templates::{all_templates, random_template};
use unavoidable::drawing::{class_position_map, standard_classes, weak_iso};
use unavoidable::extraction::{
    colour_pattern, extract_canonical, order_two, separate_sides, ColourPattern, ExtractConfig, PairOrder, QuadColour,
};
use unavoidable::realizer::SearchConfig;
use unavoidable::template::{canonical_drawing, is_realizable, verify_canonical, CanonicalSpec, Side, Template};
use unavoidable::{AbstractDrawing, Permutation, Sign};

fn sample() -> Vec<Template> {
    let mut out: Vec<Template> = all_templates(2).into_iter().chain(all_templates(3)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut four = 0;
    while four < 40 {
        let t = random_template(4, &mut rng);
        if is_realizable(&t, &SearchConfig::default()).unwrap() {
            out.push(t);
            four += 1;
        }
    }
    out
}

/// Every size-`q` choice of `A' x B' x C'` is monochromatic in a colour
/// accepted by `ok`.
fn all_subsets_monochromatic(d: &AbstractDrawing, a: &Permutation, b: &Permutation, c: &Permutation, ok: fn(QuadColour) -> bool) {
    for q in 2..=a.len() {
        for ia in (0..a.len()).combinations(q) {
            for ib in (0..b.len()).combinations(q) {
                for ic in (0..c.len()).combinations(q) {
                    let p = colour_pattern(d, &a.pick(&ia), &b.pick(&ib), &c.pick(&ic)).unwrap();
                    match p {
                        ColourPattern::Uniform(x) if ok(x) => {}
                        _ => panic!("{p:?} on {ia:?} {ib:?} {ic:?}"),
                    }
                }
            }
        }
    }
}

#[test]
fn monochromatic_colours_are_the_expected_ones() {
    let same_side = |x: QuadColour| matches!(x, QuadColour::Eta1 | QuadColour::Eta2);
    let opposite = |x: QuadColour| x == QuadColour::Eta0;
    let mut checked = [0usize; 2];
    for t in sample() {
        for n in 2..=3 {
            let d = canonical_drawing(&CanonicalSpec::new(t.clone(), n).unwrap(), &SearchConfig::default()).unwrap();
            let cl = d.classes().to_vec();
            let signed = |i: u32, j: u32| cl[j as usize - 1].signed(t.sign(i, j));
            for i in 1..=t.m() as u32 {
                let a = &cl[i as usize - 1];
                for side in [Side::Plus, Side::Minus] {
                    let own = if side == Side::Plus { Sign::Plus } else { Sign::Minus };
                    for (j, k) in t.side(i, side).iter().copied().tuple_combinations() {
                        all_subsets_monochromatic(&d, &a.signed(own), &signed(i, j), &signed(i, k), same_side);
                        checked[0] += 1;
                    }
                }
                for (&j, &k) in t.plus(i).iter().cartesian_product(t.minus(i).iter()) {
                    all_subsets_monochromatic(&d, a, &signed(i, j), &signed(i, k), opposite);
                    checked[1] += 1;
                }
            }
        }
    }
    assert!(checked.iter().all(|&c| c > 100), "{checked:?}");
}

#[test]
fn order_two_and_separate_sides_follow_the_template() {
    let cfg = ExtractConfig::default();
    for t in all_templates(3).into_iter().step_by(3) {
        let d = canonical_drawing(&CanonicalSpec::new(t.clone(), 3).unwrap(), &SearchConfig::default()).unwrap();
        let cl = d.classes().to_vec();
        let signed = |i: u32, j: u32| cl[j as usize - 1].signed(t.sign(i, j));
        for i in 1..=3u32 {
            let a = &cl[i as usize - 1];
            for (side, own) in [(Side::Plus, Sign::Plus), (Side::Minus, Sign::Minus)] {
                if let Some((j, k)) = t.side(i, side).iter().copied().collect_tuple() {
                    let o = order_two(&d, &a.signed(own), &signed(i, j), &signed(i, k), 2, &cfg).unwrap();
                    assert_eq!(o.which, PairOrder::BC, "{t} class {i}");
                    let o = order_two(&d, &a.signed(own), &signed(i, k), &signed(i, j), 3, &cfg).unwrap();
                    assert_eq!(o.which, PairOrder::CB, "{t} class {i}");
                }
            }
            for (&j, &k) in t.plus(i).iter().cartesian_product(t.minus(i).iter()) {
                let s = separate_sides(&d, a, &signed(i, j), &signed(i, k), 3, &cfg).unwrap();
                assert_eq!(s.a, *a);
            }
        }
    }
}

#[test]
fn extraction_recovers_two_and_three_class_templates() {
    let cfg = ExtractConfig::default();
    for t in all_templates(2).into_iter().chain(all_templates(3).into_iter().step_by(4)) {
        let m = t.m();
        let d = canonical_drawing(&CanonicalSpec::new(t.clone(), 4).unwrap(), &SearchConfig::default()).unwrap();
        let out = extract_canonical(&d, 2, &cfg).unwrap();
        assert_eq!(out.template, t);
        let sub = d.induce_classes(&out.classes).unwrap();
        assert!(verify_canonical(&sub, &out.classes, &out.template).is_empty());
        let rebuilt = canonical_drawing(&CanonicalSpec::new(out.template.clone(), 2).unwrap(), &SearchConfig::default()).unwrap();
        let phi = class_position_map(&standard_classes(m, 2), &out.classes);
        assert!(weak_iso(&rebuilt, &sub, &phi).unwrap());
    }
}
