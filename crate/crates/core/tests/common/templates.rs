//! Enumeration and sampling of templates.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;

use unavoidable::template::Template;

/// Every way to split `others` into an ordered plus list and minus list.
fn splits(others: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut out = Vec::new();
    for p in others.iter().copied().permutations(others.len()) {
        for cut in 0..=p.len() {
            out.push((p[..cut].to_vec(), p[cut..].to_vec()));
        }
    }
    out
}

/// All templates on `m` classes.
pub fn all_templates(m: u32) -> Vec<Template> {
    let per_class: Vec<Vec<(Vec<u32>, Vec<u32>)>> =
        (1..=m).map(|i| splits(&(1..=m).filter(|&j| j != i).collect::<Vec<_>>())).collect();
    per_class
        .iter()
        .multi_cartesian_product()
        .map(|choice| Template::from_lists(&choice.into_iter().cloned().collect::<Vec<_>>()).unwrap())
        .collect()
}

/// A uniformly random template on `m` classes.
pub fn random_template(m: u32, rng: &mut impl Rng) -> Template {
    let lists: Vec<(Vec<u32>, Vec<u32>)> = (1..=m)
        .map(|i| {
            let mut others: Vec<u32> = (1..=m).filter(|&j| j != i).collect();
            others.shuffle(rng);
            let cut = rng.gen_range(0..=others.len());
            (others[..cut].to_vec(), others[cut..].to_vec())
        })
        .collect();
    Template::from_lists(&lists).unwrap()
}
