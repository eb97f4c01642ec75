//! Linear and cyclic permutation algebra.
//!
//! Partite classes are ordered: a class is a [`Permutation`] of vertices, and
//! subclasses are subpermutations. Rotations (at vertices, at crossings, along
//! a bounding curve) are [`CyclicOrder`]s. A cyclic order is equal to its
//! rotations but *not* to its reflection: every rotation in this crate is read
//! clockwise on a fixed side of the sphere.

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombinatoricsError {
    #[error("element {0} occurs more than once")]
    Duplicate(String),
    #[error("parts overlap on element {0}")]
    Overlap(String),
    #[error("element {0} is not in the cyclic order")]
    MissingVertex(String),
    #[error("the four elements of an interleaving query must be distinct")]
    NotDistinct,
    #[error("malformed vertex identifier {0:?}")]
    BadVertex(String),
}

/// A vertex identifier.
///
/// Serialized as `"class(index)"` (e.g. `"3(2)"`), or as a bare `"class"` when
/// the vertex stands for a whole class (the complete graph `K_m` on class
/// representatives). Ordering is by class, then index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    class: u32,
    index: u32,
}

impl Vertex {
    /// Vertex `class(index)`; indices are 1-based.
    pub fn new(class: u32, index: u32) -> Self {
        assert!(index >= 1, "vertex indices are 1-based");
        Vertex { class, index }
    }

    /// A bare class label, used for `K_m` rotation systems.
    pub fn bare(class: u32) -> Self {
        Vertex { class, index: 0 }
    }

    pub fn class(self) -> u32 {
        self.class
    }

    /// `None` for bare labels.
    pub fn index(self) -> Option<u32> {
        (self.index > 0).then_some(self.index)
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index() {
            Some(i) => write!(f, "{}({})", self.class, i),
            None => write!(f, "{}", self.class),
        }
    }
}

impl FromStr for Vertex {
    type Err = CombinatoricsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CombinatoricsError::BadVertex(s.to_string());
        let s = s.trim();
        match s.find('(') {
            None => s.parse::<u32>().map(Vertex::bare).map_err(|_| bad()),
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                let class = s[..open].parse::<u32>().map_err(|_| bad())?;
                let index = inner.parse::<u32>().map_err(|_| bad())?;
                if index == 0 {
                    return Err(bad());
                }
                Ok(Vertex { class, index })
            }
        }
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Elements that can be arranged in permutations and cyclic orders.
pub trait Element: Copy + Eq + Ord + Hash + fmt::Display {}
impl<T: Copy + Eq + Ord + Hash + fmt::Display> Element for T {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i8) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// A class index carrying a sign: `+j` stands for class `j` in its own order,
/// `-j` for its reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedClass {
    pub sign: Sign,
    pub class_index: usize,
}

impl SignedClass {
    pub fn new(sign: Sign, class_index: usize) -> Self {
        SignedClass { sign, class_index }
    }
}

/// A finite sequence of distinct elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation<T = Vertex> {
    items: Vec<T>,
}

impl<T> Default for Permutation<T> {
    fn default() -> Self {
        Permutation { items: Vec::new() }
    }
}

impl<T: Element> Permutation<T> {
    pub fn new(items: Vec<T>) -> Result<Self, CombinatoricsError> {
        let mut seen = HashSet::with_capacity(items.len());
        for &x in &items {
            if !seen.insert(x) {
                return Err(CombinatoricsError::Duplicate(x.to_string()));
            }
        }
        Ok(Permutation { items })
    }

    pub fn empty() -> Self {
        Permutation { items: Vec::new() }
    }

    pub fn as_slice(&self) -> &[T] {
        &self.items
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.items.contains(x)
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.items.iter().position(|y| y == x)
    }

    /// `a <_P b`.
    pub fn precedes(&self, a: &T, b: &T) -> bool {
        match (self.position(a), self.position(b)) {
            (Some(i), Some(j)) => i < j,
            _ => false,
        }
    }

    pub fn reverse(&self) -> Self {
        let mut items = self.items.clone();
        items.reverse();
        Permutation { items }
    }

    /// `self` if `sign` is `+`, its reverse otherwise.
    pub fn signed(&self, sign: Sign) -> Self {
        match sign {
            Sign::Plus => self.clone(),
            Sign::Minus => self.reverse(),
        }
    }

    /// Signed concatenation: every part with sign `-` is reversed first.
    pub fn concat<'a, I>(parts: I) -> Result<Self, CombinatoricsError>
    where
        I: IntoIterator<Item = (Sign, &'a Permutation<T>)>,
        T: 'a,
    {
        let mut items = Vec::new();
        let mut seen = HashSet::new();
        for (sign, part) in parts {
            let before = items.len();
            items.extend_from_slice(&part.items);
            if sign == Sign::Minus {
                items[before..].reverse();
            }
            for &x in &items[before..] {
                if !seen.insert(x) {
                    return Err(CombinatoricsError::Overlap(x.to_string()));
                }
            }
        }
        Ok(Permutation { items })
    }

    /// True iff `self` is obtained from `big` by deleting elements.
    pub fn is_subpermutation_of(&self, big: &Permutation<T>) -> bool {
        let mut rest = big.items.iter();
        self.items.iter().all(|x| rest.any(|y| y == x))
    }

    /// Keeps the elements accepted by `keep`, in order.
    pub fn filter(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        Permutation {
            items: self.items.iter().copied().filter(|x| keep(x)).collect(),
        }
    }

    /// The subpermutation at the given (increasing) positions.
    pub fn pick(&self, positions: &[usize]) -> Self {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        Permutation {
            items: positions.iter().map(|&p| self.items[p]).collect(),
        }
    }

    /// The first `k` elements.
    pub fn prefix(&self, k: usize) -> Self {
        Permutation {
            items: self.items[..k.min(self.items.len())].to_vec(),
        }
    }

    pub fn into_vec(self) -> Vec<T> {
        self.items
    }
}

impl<T: Element> fmt::Display for Permutation<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (k, x) in self.items.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ">")
    }
}

impl<'a, T> IntoIterator for &'a Permutation<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;
    fn into_iter(self) -> Self::IntoIter {
        self.items.iter()
    }
}

impl<T: Element + Serialize> Serialize for Permutation<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.items.serialize(s)
    }
}

impl<'de, T: Element + Deserialize<'de>> Deserialize<'de> for Permutation<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<T>::deserialize(d)?;
        Permutation::new(items).map_err(serde::de::Error::custom)
    }
}

/// Distinct elements taken up to rotation (but not reflection).
///
/// Stored in canonical rotation, starting at the smallest element, so that the
/// derived equality is rotation invariant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicOrder<T = Vertex> {
    items: Vec<T>,
}

impl<T> Default for CyclicOrder<T> {
    fn default() -> Self {
        CyclicOrder { items: Vec::new() }
    }
}

impl<T: Element> CyclicOrder<T> {
    pub fn new(items: Vec<T>) -> Result<Self, CombinatoricsError> {
        let p = Permutation::new(items)?;
        Ok(Self::from_permutation(&p))
    }

    pub fn from_permutation(p: &Permutation<T>) -> Self {
        let mut items = p.items.clone();
        if let Some(start) = items.iter().enumerate().min_by_key(|(_, x)| **x).map(|(k, _)| k) {
            items.rotate_left(start);
        }
        CyclicOrder { items }
    }

    /// Canonical rotation (smallest element first).
    pub fn as_slice(&self) -> &[T] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.items.contains(x)
    }

    pub fn position(&self, x: &T) -> Option<usize> {
        self.items.iter().position(|y| y == x)
    }

    /// The elements read starting at `x` (inclusive).
    pub fn starting_at(&self, x: &T) -> Option<Vec<T>> {
        let k = self.position(x)?;
        let mut v = self.items.clone();
        v.rotate_left(k);
        Some(v)
    }

    /// The elements following `x`, in order, excluding `x`.
    pub fn after(&self, x: &T) -> Option<Vec<T>> {
        let mut v = self.starting_at(x)?;
        v.remove(0);
        Some(v)
    }

    pub fn successor(&self, x: &T) -> Option<T> {
        let k = self.position(x)?;
        Some(self.items[(k + 1) % self.items.len()])
    }

    pub fn reversed(&self) -> Self {
        let mut items = self.items.clone();
        items.reverse();
        Self::from_permutation(&Permutation { items })
    }

    pub fn restrict(&self, mut keep: impl FnMut(&T) -> bool) -> Self {
        Self::from_permutation(&Permutation {
            items: self.items.iter().copied().filter(|x| keep(x)).collect(),
        })
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.items.iter()
    }

    /// Maps every element; the result is re-canonicalized.
    pub fn map<U: Element>(&self, f: impl FnMut(&T) -> U) -> Result<CyclicOrder<U>, CombinatoricsError> {
        CyclicOrder::new(self.items.iter().map(f).collect())
    }

    /// True iff the two elements of `pair2` lie in different arcs of `self`
    /// cut at the two elements of `pair1`.
    pub fn interleaves(&self, pair1: (T, T), pair2: (T, T)) -> Result<bool, CombinatoricsError> {
        let (a, b) = pair1;
        let (x, y) = pair2;
        let quad = [a, b, x, y];
        for (k, q) in quad.iter().enumerate() {
            if quad[..k].contains(q) {
                return Err(CombinatoricsError::NotDistinct);
            }
        }
        let pos = |v: T| self.position(&v).ok_or_else(|| CombinatoricsError::MissingVertex(v.to_string()));
        let (pa, pb, px, py) = (pos(a)?, pos(b)?, pos(x)?, pos(y)?);
        Ok(chords_cross(pa, pb, px, py))
    }
}

/// Whether chords `(a,b)` and `(x,y)` between distinct positions on a circle
/// alternate.
pub fn chords_cross(a: usize, b: usize, x: usize, y: usize) -> bool {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let inside = |p: usize| lo < p && p < hi;
    inside(x) != inside(y)
}

impl<T: Element> fmt::Display for CyclicOrder<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[")?;
        for (k, x) in self.items.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]]")
    }
}

impl<T: Element + Serialize> Serialize for CyclicOrder<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.items.serialize(s)
    }
}

impl<'de, T: Element + Deserialize<'de>> Deserialize<'de> for CyclicOrder<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<T>::deserialize(d)?;
        CyclicOrder::new(items).map_err(serde::de::Error::custom)
    }
}

/// Free-function form of [`Permutation::reverse`].
pub fn reverse<T: Element>(p: &Permutation<T>) -> Permutation<T> {
    p.reverse()
}

/// Free-function form of [`Permutation::concat`].
pub fn concat<T: Element>(parts: &[(Sign, &Permutation<T>)]) -> Result<Permutation<T>, CombinatoricsError> {
    Permutation::concat(parts.iter().copied())
}

pub fn is_subpermutation<T: Element>(small: &Permutation<T>, big: &Permutation<T>) -> bool {
    small.is_subpermutation_of(big)
}

pub fn interleaves<T: Element>(c: &CyclicOrder<T>, pair1: (T, T), pair2: (T, T)) -> Result<bool, CombinatoricsError> {
    c.interleaves(pair1, pair2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn perm(xs: &[&str]) -> Permutation {
        Permutation::new(xs.iter().map(|s| v(s)).collect()).unwrap()
    }

    fn cyc(xs: &[&str]) -> CyclicOrder {
        CyclicOrder::new(xs.iter().map(|s| v(s)).collect()).unwrap()
    }

    #[test]
    fn vertex_round_trip() {
        for s in ["1(1)", "12(30)", "4"] {
            assert_eq!(v(s).to_string(), s);
        }
        assert!("1(0)".parse::<Vertex>().is_err());
        assert!("b1".parse::<Vertex>().is_err());
        assert!("1(2".parse::<Vertex>().is_err());
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(perm(&["1(1)", "1(2)", "1(3)"]).reverse(), perm(&["1(3)", "1(2)", "1(1)"]));
        assert_eq!(Permutation::<Vertex>::empty().reverse(), Permutation::empty());
        assert_eq!(perm(&["2(1)"]).reverse(), perm(&["2(1)"]));
    }

    #[test]
    fn concat_examples() {
        let one = perm(&["1(1)", "1(2)"]);
        let two = perm(&["2(1)", "2(2)"]);
        assert_eq!(
            concat(&[(Sign::Plus, &one), (Sign::Minus, &two)]).unwrap(),
            perm(&["1(1)", "1(2)", "2(2)", "2(1)"])
        );
        assert_eq!(concat(&[(Sign::Plus, &one)]).unwrap(), one);
        let a = perm(&["1"]);
        let b = perm(&["2"]);
        assert_eq!(concat(&[(Sign::Minus, &a), (Sign::Minus, &b)]).unwrap(), perm(&["1", "2"]));
        assert_eq!(
            concat(&[(Sign::Plus, &one), (Sign::Plus, &perm(&["1(2)"]))]),
            Err(CombinatoricsError::Overlap("1(2)".into()))
        );
    }

    #[test]
    fn subpermutation_examples() {
        let one = perm(&["1(1)", "1(2)", "1(3)"]);
        assert!(perm(&["1(1)", "1(3)"]).is_subpermutation_of(&one));
        assert!(Permutation::empty().is_subpermutation_of(&one));
        assert!(!perm(&["2", "1"]).is_subpermutation_of(&perm(&["1", "2"])));
    }

    #[test]
    fn duplicates_rejected() {
        assert!(Permutation::new(vec![v("1"), v("1")]).is_err());
        assert!(CyclicOrder::new(vec![v("1"), v("2"), v("1")]).is_err());
    }

    #[test]
    fn cyclic_equality_is_rotation_not_reflection() {
        assert_eq!(cyc(&["1", "2", "3"]), cyc(&["3", "1", "2"]));
        assert_ne!(cyc(&["1", "2", "3"]), cyc(&["3", "2", "1"]));
        assert_eq!(cyc(&["1", "2", "3"]).reversed(), cyc(&["3", "2", "1"]));
    }

    #[test]
    fn restriction_is_canonical() {
        let c = cyc(&["1", "4", "2", "3"]);
        let r = c.restrict(|x| *x != v("1"));
        assert_eq!(r, cyc(&["4", "2", "3"]));
        assert_eq!(r.as_slice()[0], v("2"));
    }

    #[test]
    fn interleaving_examples() {
        // a=1, x=2, b=3, y=4
        assert!(cyc(&["1", "2", "3", "4"]).interleaves((v("1"), v("3")), (v("2"), v("4"))).unwrap());
        assert!(!cyc(&["1", "3", "2", "4"]).interleaves((v("1"), v("3")), (v("2"), v("4"))).unwrap());
        // b1=1(1), b2=1(2), w2=2(2), w1=2(1)
        let c = cyc(&["1(1)", "1(2)", "2(2)", "2(1)"]);
        assert!(c.interleaves((v("1(1)"), v("2(2)")), (v("1(2)"), v("2(1)"))).unwrap());
        assert_eq!(
            c.interleaves((v("1(1)"), v("3(3)")), (v("1(2)"), v("2(1)"))),
            Err(CombinatoricsError::MissingVertex("3(3)".into()))
        );
    }

    #[test]
    fn exactly_one_pairing_of_four_interleaves() {
        // Brute force over all 4-element cyclic orders: one of the three
        // perfect matchings alternates.
        let xs = [v("1"), v("2"), v("3"), v("4")];
        for p in itertools::Itertools::permutations(xs.iter().copied(), 4) {
            let c = CyclicOrder::new(p).unwrap();
            let matchings = [
                ((xs[0], xs[1]), (xs[2], xs[3])),
                ((xs[0], xs[2]), (xs[1], xs[3])),
                ((xs[0], xs[3]), (xs[1], xs[2])),
            ];
            let n = matchings.iter().filter(|(p1, p2)| c.interleaves(*p1, *p2).unwrap()).count();
            assert_eq!(n, 1, "{c}");
        }
    }

    fn distinct_vec(max: usize) -> impl Strategy<Value = Vec<u32>> {
        proptest::sample::subsequence((0..40u32).collect::<Vec<_>>(), 0..max).prop_shuffle()
    }

    proptest! {
        #[test]
        fn reverse_is_involution(xs in distinct_vec(12)) {
            let p = Permutation::new(xs).unwrap();
            prop_assert_eq!(p.reverse().reverse(), p);
        }

        #[test]
        fn concat_restricts_to_parts(xs in distinct_vec(16), cut in 0usize..16, s1: bool, s2: bool) {
            let cut = cut.min(xs.len());
            let a = Permutation::new(xs[..cut].to_vec()).unwrap();
            let b = Permutation::new(xs[cut..].to_vec()).unwrap();
            let sa = if s1 { Sign::Plus } else { Sign::Minus };
            let sb = if s2 { Sign::Plus } else { Sign::Minus };
            let c = concat(&[(sa, &a), (sb, &b)]).unwrap();
            prop_assert_eq!(c.len(), a.len() + b.len());
            prop_assert_eq!(c.filter(|x| a.contains(x)), a.signed(sa));
            prop_assert_eq!(c.filter(|x| b.contains(x)), b.signed(sb));
        }

        #[test]
        fn interleaves_symmetric_and_rotation_invariant(xs in distinct_vec(10), rot in 0usize..10) {
            prop_assume!(xs.len() >= 4);
            let c = CyclicOrder::new(xs.clone()).unwrap();
            let mut rotated = xs.clone();
            rotated.rotate_left(rot % xs.len());
            let r = CyclicOrder::new(rotated).unwrap();
            prop_assert_eq!(&c, &r);
            let (p1, p2) = ((xs[0], xs[2]), (xs[1], xs[3]));
            let forward = c.interleaves(p1, p2).unwrap();
            prop_assert_eq!(forward, c.interleaves(p2, p1).unwrap());
            prop_assert_eq!(forward, r.interleaves(p1, p2).unwrap());
        }

        #[test]
        fn subpermutation_reflexive_transitive(xs in distinct_vec(12), m1 in any::<u16>(), m2 in any::<u16>()) {
            let big = Permutation::new(xs).unwrap();
            prop_assert!(big.is_subpermutation_of(&big));
            let mid = big.filter(|x| m1 >> (*x % 16) & 1 == 1);
            let small = mid.filter(|x| m2 >> (*x % 16) & 1 == 1);
            prop_assert!(mid.is_subpermutation_of(&big));
            prop_assert!(small.is_subpermutation_of(&mid));
            prop_assert!(small.is_subpermutation_of(&big));
        }
    }
}
