//! Templates, their sign functions, and the canonical drawings they encode.
//!
//! Class indices are 1-based throughout, matching the serialized form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{CyclicOrder, Permutation, Sign, Vertex};
use crate::drawing::{
    bipartite_edges, complete_multipartite_edges, rho_mismatches, standard_classes, AbstractDrawing, CrossingRecord,
    Edge, EdgePair, RhoMismatch,
};
use crate::realizer::{
    crossing_data, is_realizable_ks, k4_table, realize, K4Verdict, PlanarizedWitness, Realization, RealizerError,
    RotationSystem, SearchConfig,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TemplateError {
    #[error("invalid template: {0}")]
    Invalid(String),
    #[error("template is not realizable")]
    Unrealizable,
    #[error("vertex {0} is not in a class of the template")]
    UnknownClass(Vertex),
    #[error("realizer witness disagrees with the K4 table on {0}")]
    WitnessMismatch(EdgePair),
    #[error(transparent)]
    Realizer(#[from] RealizerError),
}

/// `sigma(j, i)` for every ordered pair of distinct classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignFunction {
    m: usize,
    values: BTreeMap<(u32, u32), Sign>,
}

#[derive(Serialize, Deserialize)]
struct SignEntry {
    j: u32,
    i: u32,
    sign: Sign,
}

impl Serialize for SignFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let entries: Vec<SignEntry> = self.values.iter().map(|(&(j, i), &sign)| SignEntry { j, i, sign }).collect();
        (self.m, entries).serialize(s)
    }
}

impl SignFunction {
    /// Builds `sigma` from a closure; it is called on every ordered pair.
    pub fn from_fn(m: usize, mut f: impl FnMut(u32, u32) -> Sign) -> Self {
        let mut values = BTreeMap::new();
        for j in 1..=m as u32 {
            for i in 1..=m as u32 {
                if i != j {
                    values.insert((j, i), f(j, i));
                }
            }
        }
        SignFunction { m, values }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `sigma(j, i)`.
    pub fn get(&self, j: u32, i: u32) -> Sign {
        self.values[&(j, i)]
    }

    /// `sigma^+(i)`.
    pub fn plus_set(&self, i: u32) -> BTreeSet<u32> {
        self.side_set(i, Sign::Plus)
    }

    /// `sigma_-(i)`.
    pub fn minus_set(&self, i: u32) -> BTreeSet<u32> {
        self.side_set(i, Sign::Minus)
    }

    fn side_set(&self, i: u32, sign: Sign) -> BTreeSet<u32> {
        self.values.iter().filter(|(&(_, k), &s)| k == i && s == sign).map(|(&(j, _), _)| j).collect()
    }
}

/// The two sides of one class: `i^+` and `i_-`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSides {
    pub plus: Permutation<u32>,
    pub minus: Permutation<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Plus => "plus",
            Side::Minus => "minus",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TemplateJson", into = "TemplateJson")]
pub struct Template {
    sides: Vec<ClassSides>,
}

#[derive(Serialize, Deserialize)]
struct TemplateJson {
    m: usize,
    classes: Vec<ClassSides>,
}

impl TryFrom<TemplateJson> for Template {
    type Error = TemplateError;
    fn try_from(raw: TemplateJson) -> Result<Self, Self::Error> {
        if raw.m != raw.classes.len() {
            return Err(TemplateError::Invalid(format!("m = {} but {} classes given", raw.m, raw.classes.len())));
        }
        Template::new(raw.classes)
    }
}

impl From<Template> for TemplateJson {
    fn from(t: Template) -> Self {
        TemplateJson { m: t.sides.len(), classes: t.sides }
    }
}

impl Template {
    pub fn new(sides: Vec<ClassSides>) -> Result<Self, TemplateError> {
        let m = sides.len() as u32;
        for (k, s) in sides.iter().enumerate() {
            let i = k as u32 + 1;
            let mut all: Vec<u32> = s.plus.iter().chain(s.minus.iter()).copied().collect();
            all.sort_unstable();
            let want: Vec<u32> = (1..=m).filter(|&j| j != i).collect();
            if all != want {
                return Err(TemplateError::Invalid(format!(
                    "class {i}: plus {} and minus {} do not partition the other classes",
                    s.plus, s.minus
                )));
            }
        }
        Ok(Template { sides })
    }

    /// Convenience constructor from `(plus, minus)` lists.
    pub fn from_lists<P: AsRef<[u32]>>(lists: &[(P, P)]) -> Result<Self, TemplateError> {
        let perm = |xs: &[u32]| Permutation::new(xs.to_vec()).map_err(|e| TemplateError::Invalid(e.to_string()));
        let sides = lists
            .iter()
            .map(|(p, q)| Ok(ClassSides { plus: perm(p.as_ref())?, minus: perm(q.as_ref())? }))
            .collect::<Result<_, TemplateError>>()?;
        Template::new(sides)
    }

    pub fn m(&self) -> usize {
        self.sides.len()
    }

    pub fn sides(&self) -> &[ClassSides] {
        &self.sides
    }

    /// `i^+`.
    pub fn plus(&self, i: u32) -> &Permutation<u32> {
        &self.sides[i as usize - 1].plus
    }

    /// `i_-`.
    pub fn minus(&self, i: u32) -> &Permutation<u32> {
        &self.sides[i as usize - 1].minus
    }

    pub fn side(&self, i: u32, side: Side) -> &Permutation<u32> {
        match side {
            Side::Plus => self.plus(i),
            Side::Minus => self.minus(i),
        }
    }

    /// `sigma(j, i)`: `+` iff `j` is in `i^+`.
    pub fn sign(&self, j: u32, i: u32) -> Sign {
        if self.plus(i).contains(&j) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    /// Which side of class `i` class `j` lies on.
    pub fn side_of(&self, j: u32, i: u32) -> Side {
        match self.sign(j, i) {
            Sign::Plus => Side::Plus,
            Sign::Minus => Side::Minus,
        }
    }

    /// The template describing the same drawing after reversing class `i`:
    /// its two sides swap, which flips every `sigma(j, i)`.
    pub fn reversal(&self, i: u32) -> Template {
        let mut sides = self.sides.clone();
        let s = &mut sides[i as usize - 1];
        std::mem::swap(&mut s.plus, &mut s.minus);
        Template { sides }
    }
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.sides.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{}+={} {}-={}", k + 1, s.plus, k + 1, s.minus)?;
        }
        Ok(())
    }
}

pub fn sign_of(t: &Template) -> SignFunction {
    SignFunction::from_fn(t.m(), |j, i| t.sign(j, i))
}

/// A template together with a class size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSpec {
    pub template: Template,
    pub n: usize,
}

impl CanonicalSpec {
    pub fn new(template: Template, n: usize) -> Result<Self, TemplateError> {
        if n == 0 {
            return Err(TemplateError::Invalid("class size must be positive".into()));
        }
        Ok(CanonicalSpec { template, n })
    }

    pub fn classes(&self) -> Vec<Permutation> {
        standard_classes(self.template.m(), self.n)
    }
}

/// The bounding order of one side of class `i`, as a linear sequence
/// starting with class `i` itself (reversed on the minus side), or `None`
/// when that side is empty.
pub fn side_order(t: &Template, classes: &[Permutation], i: u32, side: Side) -> Option<Permutation> {
    let order = t.side(i, side);
    if order.is_empty() {
        return None;
    }
    let own = match side {
        Side::Plus => Sign::Plus,
        Side::Minus => Sign::Minus,
    };
    let class = |c: u32| &classes[c as usize - 1];
    let parts = std::iter::once((own, class(i))).chain(order.iter().map(|&j| (t.sign(i, j), class(j))));
    Some(Permutation::concat(parts).expect("classes are disjoint"))
}

/// The (C1) and (C2) bounding orders of class `i`.
pub fn induced_orders(spec: &CanonicalSpec, i: u32) -> (Option<CyclicOrder>, Option<CyclicOrder>) {
    let classes = spec.classes();
    let cyc = |p: Option<Permutation>| p.map(|p| CyclicOrder::from_permutation(&p));
    (
        cyc(side_order(&spec.template, &classes, i, Side::Plus)),
        cyc(side_order(&spec.template, &classes, i, Side::Minus)),
    )
}

/// Vertex `i` gets `[[i^+ . i_-]]`.
pub fn rotation_system_of(t: &Template) -> RotationSystem {
    let rotation = (1..=t.m() as u32)
        .map(|i| {
            let order: Vec<Vertex> = t.plus(i).iter().chain(t.minus(i).iter()).map(|&j| Vertex::bare(j)).collect();
            (Vertex::bare(i), CyclicOrder::new(order).expect("distinct"))
        })
        .collect();
    RotationSystem::complete(rotation).expect("complete rotation system")
}

pub fn is_realizable(t: &Template, cfg: &SearchConfig) -> Result<bool, TemplateError> {
    if t.m() < 3 {
        return Ok(true);
    }
    Ok(is_realizable_ks(&rotation_system_of(t), cfg)?)
}

/// A witness drawing of `K_m` for the template's rotation system.
pub fn realization_of(t: &Template, cfg: &SearchConfig) -> Result<Realization, TemplateError> {
    Ok(realize(&rotation_system_of(t), cfg)?)
}

/// The crossing predicate of canonical drawings, with the per-class bounding
/// orders and the `K4` verdicts precomputed.
#[derive(Debug, Clone)]
pub struct CrossingPredicate {
    template: Template,
    /// Position of every vertex in the plus and minus order of each class.
    positions: BTreeMap<(u32, Side), BTreeMap<Vertex, usize>>,
    orders: BTreeMap<(u32, Side), CyclicOrder>,
    /// Crossing class pair of every 4-class subsystem that has one.
    k4: BTreeMap<[u32; 4], Option<EdgePair>>,
}

impl CrossingPredicate {
    pub fn new(spec: &CanonicalSpec) -> Result<Self, TemplateError> {
        let t = &spec.template;
        let classes = spec.classes();
        let mut positions = BTreeMap::new();
        let mut orders = BTreeMap::new();
        for i in 1..=t.m() as u32 {
            for side in [Side::Plus, Side::Minus] {
                if let Some(p) = side_order(t, &classes, i, side) {
                    positions.insert((i, side), p.iter().enumerate().map(|(k, &v)| (v, k)).collect());
                    orders.insert((i, side), CyclicOrder::from_permutation(&p));
                }
            }
        }
        let rs = rotation_system_of(t);
        let table = k4_table();
        let mut k4 = BTreeMap::new();
        for quad in (1..=t.m() as u32).combinations(4) {
            let sub = rs.restrict(&quad.iter().map(|&c| Vertex::bare(c)).collect());
            match table.lookup(&sub) {
                Some((K4Verdict::Realizable, pair)) => {
                    k4.insert([quad[0], quad[1], quad[2], quad[3]], pair);
                }
                _ => return Err(TemplateError::Unrealizable),
            }
        }
        Ok(CrossingPredicate { template: t.clone(), positions, orders, k4 })
    }

    fn check(&self, v: Vertex) -> Result<u32, TemplateError> {
        let c = v.class();
        if c == 0 || c as usize > self.template.m() || v.index().is_none() {
            return Err(TemplateError::UnknownClass(v));
        }
        Ok(c)
    }

    /// The bounding order deciding `(e, f)` when they share a class, or
    /// `None` if they lie on opposite sides of every shared class.
    fn shared_order(&self, e: Edge, f: Edge) -> Option<(u32, Side)> {
        let (e0, e1) = e.ends();
        let (f0, f1) = f.ends();
        let ce = [e0.class(), e1.class()];
        let cf = [f0.class(), f1.class()];
        let i = *ce.iter().filter(|c| cf.contains(c)).min()?;
        let j = if ce[0] == i { ce[1] } else { ce[0] };
        let l = if cf[0] == i { cf[1] } else { cf[0] };
        let t = &self.template;
        let (sj, sl) = (t.side_of(j, i), t.side_of(l, i));
        (sj == sl).then_some((i, sj))
    }

    pub fn crosses(&self, e: Edge, f: Edge) -> Result<bool, TemplateError> {
        Ok(self.crossing(e, f)?.is_some())
    }

    /// Whether `e` and `f` cross, with the rotation at the crossing when it
    /// is determined by a bounding order (shared class) or `None` rotation
    /// for crossings between four distinct classes.
    fn crossing(&self, e: Edge, f: Edge) -> Result<Option<Option<CyclicOrder>>, TemplateError> {
        for v in [e.ends().0, e.ends().1, f.ends().0, f.ends().1] {
            self.check(v)?;
        }
        if e.ends().0.class() == e.ends().1.class() || f.ends().0.class() == f.ends().1.class() {
            return Err(TemplateError::Invalid(format!("edge {e} or {f} lies inside one class")));
        }
        if e.is_adjacent(f) {
            return Ok(None);
        }
        let classes: BTreeSet<u32> = [e.ends().0, e.ends().1, f.ends().0, f.ends().1].iter().map(|v| v.class()).collect();
        if classes.len() < 4 {
            let Some(key) = self.shared_order(e, f) else { return Ok(None) };
            let pos = &self.positions[&key];
            let p = |v: Vertex| pos[&v];
            let crossing = crate::combinatorics::chords_cross(p(e.ends().0), p(e.ends().1), p(f.ends().0), p(f.ends().1));
            if !crossing {
                return Ok(None);
            }
            let rotation = self.orders[&key].restrict(|v| e.has(*v) || f.has(*v));
            return Ok(Some(Some(rotation)));
        }
        let quad: Vec<u32> = classes.into_iter().collect();
        let pair = self.k4[&[quad[0], quad[1], quad[2], quad[3]]];
        let lift = |x: Edge| Edge::new(Vertex::bare(x.ends().0.class()), Vertex::bare(x.ends().1.class()));
        Ok((pair == Some(EdgePair::new(lift(e), lift(f)))).then_some(None))
    }
}

pub fn crosses(spec: &CanonicalSpec, e: Edge, f: Edge) -> Result<bool, TemplateError> {
    CrossingPredicate::new(spec)?.crosses(e, f)
}

/// The rotation at `v` in the canonical drawing: its plus-side neighbours
/// in bounding order, then its minus-side neighbours.
fn canonical_rotation(t: &Template, classes: &[Permutation], i: u32, v: Vertex, nbrs: &BTreeSet<Vertex>) -> CyclicOrder {
    let mut out = Vec::new();
    for side in [Side::Plus, Side::Minus] {
        if let Some(p) = side_order(t, classes, i, side) {
            let rho = CyclicOrder::from_permutation(&p);
            out.extend(rho.after(&v).unwrap_or_default().into_iter().filter(|u| nbrs.contains(u)));
        }
    }
    CyclicOrder::new(out).expect("distinct")
}

/// The canonical drawing of `K_n^m` with template `spec.template`. Crossings
/// between four distinct classes take their rotation from a realizer witness
/// of the template's rotation system.
pub fn canonical_drawing(spec: &CanonicalSpec, cfg: &SearchConfig) -> Result<AbstractDrawing, TemplateError> {
    let t = &spec.template;
    let witness = match t.m() {
        0..=3 => None,
        _ => match realization_of(t, cfg)? {
            Realization::Witness(w) => Some(w),
            Realization::Unrealizable => return Err(TemplateError::Unrealizable),
        },
    };
    canonical_drawing_with(spec, witness.as_deref())
}

/// As [`canonical_drawing`], with the witness supplied by the caller.
pub fn canonical_drawing_with(
    spec: &CanonicalSpec,
    witness: Option<&PlanarizedWitness>,
) -> Result<AbstractDrawing, TemplateError> {
    let t = &spec.template;
    let predicate = CrossingPredicate::new(spec)?;
    let classes = spec.classes();
    let edges: Vec<Edge> = complete_multipartite_edges(&classes).into_iter().collect();
    let km = witness.map(crossing_data).unwrap_or_default();
    let mut crossings = Vec::new();
    for (k, &e) in edges.iter().enumerate() {
        for &f in &edges[k + 1..] {
            match predicate.crossing(e, f)? {
                None => {}
                Some(Some(rotation)) => crossings.push(CrossingRecord::new(e, f, rotation)),
                Some(None) => {
                    let lift = |x: Edge| Edge::new(Vertex::bare(x.ends().0.class()), Vertex::bare(x.ends().1.class()));
                    let key = EdgePair::new(lift(e), lift(f));
                    let rot = km.get(&key).ok_or(TemplateError::WitnessMismatch(key))?;
                    let name: BTreeMap<u32, Vertex> =
                        [e.ends().0, e.ends().1, f.ends().0, f.ends().1].iter().map(|v| (v.class(), *v)).collect();
                    let rotation = rot.map(|c| name[&c.class()]).expect("distinct");
                    crossings.push(CrossingRecord::new(e, f, rotation));
                }
            }
        }
    }
    let mut rotations = BTreeMap::new();
    let all: BTreeSet<Vertex> = classes.iter().flat_map(|c| c.iter().copied()).collect();
    for (k, class) in classes.iter().enumerate() {
        let i = k as u32 + 1;
        for &v in class {
            let nbrs: BTreeSet<Vertex> = all.iter().filter(|u| u.class() != i).copied().collect();
            rotations.insert(v, canonical_rotation(t, &classes, i, v, &nbrs));
        }
    }
    Ok(AbstractDrawing::new(classes, edges, rotations, crossings))
}

/// One violated clause of canonicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum CanonicalViolation {
    ClassCount { expected: usize, actual: usize },
    /// (C1) for the plus side, (C2) for the minus side.
    SideOrder { class: u32, side: Side, mismatches: Vec<RhoMismatch> },
    /// (C3'): a plus-side edge crosses a minus-side edge.
    CrossSide { class: u32, e: Edge, f: Edge },
    VertexRotation { vertex: Vertex, expected: CyclicOrder, actual: Option<CyclicOrder> },
}

impl fmt::Display for CanonicalViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalViolation::ClassCount { expected, actual } => {
                write!(f, "template has {expected} classes, drawing has {actual}")
            }
            CanonicalViolation::SideOrder { class, side, mismatches } => {
                let clause = if *side == Side::Plus { "C1" } else { "C2" };
                write!(f, "({clause}) class {class}: {} edge pair(s) differ", mismatches.len())?;
                if let Some(m) = mismatches.first() {
                    write!(f, ", first {} / {}", m.e, m.f)?;
                }
                Ok(())
            }
            CanonicalViolation::CrossSide { class, e, f: g } => {
                write!(f, "(C3') class {class}: {e} crosses {g}")
            }
            CanonicalViolation::VertexRotation { vertex, expected, .. } => {
                write!(f, "rotation at {vertex} is not {expected}")
            }
        }
    }
}

/// Every violated canonicity clause of `d` with respect to `t`, taking
/// `classes[k]` as class `k + 1`.
pub fn verify_canonical(d: &AbstractDrawing, classes: &[Permutation], t: &Template) -> Vec<CanonicalViolation> {
    let mut out = Vec::new();
    if classes.len() != t.m() {
        out.push(CanonicalViolation::ClassCount { expected: t.m(), actual: classes.len() });
        return out;
    }
    let class = |c: u32| &classes[c as usize - 1];
    for i in 1..=t.m() as u32 {
        let mut side_edges = BTreeMap::new();
        for side in [Side::Plus, Side::Minus] {
            let es: BTreeSet<Edge> = t.side(i, side).iter().flat_map(|&j| bipartite_edges(class(i), class(j))).collect();
            if let Some(p) = side_order(t, classes, i, side) {
                let rho = CyclicOrder::from_permutation(&p);
                let mismatches = rho_mismatches(d, &rho, &es);
                if !mismatches.is_empty() {
                    out.push(CanonicalViolation::SideOrder { class: i, side, mismatches });
                }
            }
            side_edges.insert(side, es);
        }
        for c in d.crossings() {
            let (e, f) = (c.e, c.f);
            let plus = &side_edges[&Side::Plus];
            let minus = &side_edges[&Side::Minus];
            if (plus.contains(&e) && minus.contains(&f)) || (plus.contains(&f) && minus.contains(&e)) {
                out.push(CanonicalViolation::CrossSide { class: i, e, f });
            }
        }
        for &v in class(i) {
            let nbrs = d.neighbours(v);
            let expected = canonical_rotation(t, classes, i, v, &nbrs);
            let actual = d.rotation(v).cloned();
            if actual.as_ref() != Some(&expected) {
                out.push(CanonicalViolation::VertexRotation { vertex: v, expected, actual });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NotCanonical {
    #[error("classes {0} and {1} induce no signed 1-page drawing")]
    PairNotOnePage(u32, u32),
    #[error("class {0}: the classes on its {1} side admit no consistent order")]
    NoSideOrder(u32, Side),
    #[error("class {0} is empty")]
    EmptyClass(u32),
    #[error("reconstructed template {template} fails verification: {}", .report.first().map(|v| v.to_string()).unwrap_or_default())]
    Verification { template: Box<Template>, report: Vec<CanonicalViolation> },
}

/// Reads the template off a drawing whose classes are given in order.
///
/// With classes of size at least two the sign of every class pair is fixed by
/// which signed 1-page drawing the pair induces, and each side's order by
/// pairwise comparison. With singleton classes the rotation at the single
/// vertex is taken as the plus side.
pub fn template_of(d: &AbstractDrawing, classes: &[Permutation]) -> Result<Template, NotCanonical> {
    let m = classes.len() as u32;
    for (k, c) in classes.iter().enumerate() {
        if c.is_empty() {
            return Err(NotCanonical::EmptyClass(k as u32 + 1));
        }
    }
    let class = |c: u32| &classes[c as usize - 1];
    let t = if classes.iter().any(|c| c.len() < 2) {
        from_rotations(d, classes)?
    } else {
        let mut sigma = BTreeMap::new();
        for (i, j) in (1..=m).tuple_combinations() {
            let es = bipartite_edges(class(i), class(j));
            let found = [Sign::Plus, Sign::Minus].iter().cartesian_product([Sign::Plus, Sign::Minus]).find(|(s, u)| {
                let p = Permutation::concat([(**s, class(i)), (*u, class(j))]).expect("disjoint");
                rho_mismatches(d, &CyclicOrder::from_permutation(&p), &es).is_empty()
            });
            let (&s, u) = found.ok_or(NotCanonical::PairNotOnePage(i, j))?;
            sigma.insert((j, i), s);
            sigma.insert((i, j), u);
        }
        let mut sides = Vec::new();
        for i in 1..=m {
            let mut lists = Vec::new();
            for (side, own) in [(Side::Plus, Sign::Plus), (Side::Minus, Sign::Minus)] {
                let members: Vec<u32> = (1..=m).filter(|&j| j != i && (sigma[&(j, i)] == own)).collect();
                let before = |j: u32, l: u32| {
                    let p = Permutation::concat([(own, class(i)), (sigma[&(i, j)], class(j)), (sigma[&(i, l)], class(l))])
                        .expect("disjoint");
                    let mut es = bipartite_edges(class(i), class(j));
                    es.extend(bipartite_edges(class(i), class(l)));
                    rho_mismatches(d, &CyclicOrder::from_permutation(&p), &es).is_empty()
                };
                let mut rank = BTreeMap::new();
                for &j in &members {
                    let wins = members.iter().filter(|&&l| l != j && before(l, j)).count();
                    rank.insert(j, wins);
                }
                let mut order = members.clone();
                order.sort_by_key(|j| rank[j]);
                if order.iter().enumerate().any(|(k, j)| rank[j] != k) {
                    return Err(NotCanonical::NoSideOrder(i, side));
                }
                lists.push(Permutation::new(order).expect("distinct"));
            }
            let minus = lists.pop().expect("two sides");
            let plus = lists.pop().expect("two sides");
            sides.push(ClassSides { plus, minus });
        }
        Template::new(sides).expect("sides partition the other classes")
    };
    let report = verify_canonical(d, classes, &t);
    if report.is_empty() {
        Ok(t)
    } else {
        Err(NotCanonical::Verification { template: Box::new(t), report })
    }
}

fn from_rotations(d: &AbstractDrawing, classes: &[Permutation]) -> Result<Template, NotCanonical> {
    let reps: Vec<Vertex> = classes.iter().map(|c| c.as_slice()[0]).collect();
    let class_of: BTreeMap<Vertex, u32> = reps.iter().enumerate().map(|(k, &v)| (v, k as u32 + 1)).collect();
    let mut sides = Vec::new();
    for (k, &v) in reps.iter().enumerate() {
        let others: BTreeSet<Vertex> = reps.iter().copied().filter(|&u| u != v).collect();
        let rot = d.rotation_at_vertex(v, &others).map_err(|_| NotCanonical::NoSideOrder(k as u32 + 1, Side::Plus))?;
        let order: Vec<u32> = rot.iter().map(|u| class_of[u]).collect();
        let cyc = CyclicOrder::new(order).expect("distinct");
        sides.push(ClassSides { plus: Permutation::new(cyc.as_slice().to_vec()).expect("distinct"), minus: Permutation::empty() });
    }
    Template::new(sides).map_err(|_| NotCanonical::NoSideOrder(1, Side::Plus))
}

/// The template of the worked example drawing of `K_3^5`.
pub fn gamma5() -> Template {
    Template::from_lists(&[
        (vec![3, 2], vec![4, 5]),
        (vec![], vec![3, 1, 5, 4]),
        (vec![1, 2], vec![5, 4]),
        (vec![2], vec![3, 5, 1]),
        (vec![3, 1, 4], vec![2]),
    ])
    .expect("valid template")
}

/// The non-realizable template with every minus side empty.
pub fn unrealizable_k4_template() -> Template {
    Template::from_lists(&[
        (vec![2, 3, 4], vec![]),
        (vec![3, 4, 1], vec![]),
        (vec![4, 1, 2], vec![]),
        (vec![1, 3, 2], vec![]),
    ])
    .expect("valid template")
}
