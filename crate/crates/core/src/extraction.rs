//! Desk-scale extraction of canonical subdrawings.
//!
//! Each step that asymptotically needs a Ramsey bound is carried out here by
//! exhaustive search over subpermutations in colex order. A search may come
//! back empty when the input is too small; that is reported as `NotFound`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::combinatorics::{CyclicOrder, Permutation, Sign, Vertex};
use crate::drawing::{bipartite_edges, is_rho_drawing, AbstractDrawing, DrawingError, Edge};
use crate::template::{
    template_of, verify_canonical, CanonicalViolation, ClassSides, NotCanonical, SignFunction, Template,
};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtractionError {
    #[error("no subpermutations of size {q} found for {what}")]
    NotFound { what: String, q: usize },
    #[error("search budget of {0} candidates exhausted")]
    BudgetExceeded(u64),
    #[error("quad {a}, {a2} | {b}, {c}: {reason}")]
    SimplicityViolation { a: Vertex, a2: Vertex, b: Vertex, c: Vertex, reason: String },
    #[error("pairwise orders of groups {0}, {1}, {2} form a cycle")]
    TransitivityViolation(u32, u32, u32),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("extracted template {template} fails verification: {}", .report.first().map(|v| v.to_string()).unwrap_or_default())]
    Unverified { template: Box<Template>, report: Vec<CanonicalViolation> },
    #[error(transparent)]
    NotCanonical(#[from] NotCanonical),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// The colour of a 4-edge `{a, a2, b, c}` with `a` before `a2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadColour {
    /// No crossing.
    Eta0,
    /// `ac` crosses `a2b` with rotation `[[a, a2, c, b]]`.
    Eta1,
    /// `ab` crosses `a2c` with rotation `[[a, a2, b, c]]`.
    Eta2,
    /// `ac` crosses `a2b` with rotation `[[a, b, c, a2]]`.
    Eta3,
    /// `ab` crosses `a2c` with rotation `[[a, c, b, a2]]`.
    Eta4,
}

impl QuadColour {
    pub const ALL: [QuadColour; 5] =
        [QuadColour::Eta0, QuadColour::Eta1, QuadColour::Eta2, QuadColour::Eta3, QuadColour::Eta4];
}

impl fmt::Display for QuadColour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = QuadColour::ALL.iter().position(|c| c == self).expect("listed");
        write!(f, "eta{k}")
    }
}

fn cyc(xs: [Vertex; 4]) -> CyclicOrder {
    CyclicOrder::new(xs.to_vec()).expect("distinct")
}

/// Colours the `K_{2,2}` on `{a, a2} x {b, c}`.
pub fn colour_quad(d: &AbstractDrawing, a: Vertex, a2: Vertex, b: Vertex, c: Vertex) -> Result<QuadColour, ExtractionError> {
    let (ab, ac, a2b, a2c) = (Edge::new(a, b), Edge::new(a, c), Edge::new(a2, b), Edge::new(a2, c));
    if let Some(&e) = [ab, ac, a2b, a2c].iter().find(|e| !d.has_edge(**e)) {
        return Err(DrawingError::UnknownEdge(e).into());
    }
    let violation = |reason: &str| ExtractionError::SimplicityViolation { a, a2, b, c, reason: reason.into() };
    match (d.crossing(ac, a2b), d.crossing(ab, a2c)) {
        (None, None) => Ok(QuadColour::Eta0),
        (Some(_), Some(_)) => Err(violation("both pairs of opposite edges cross")),
        (Some(x), None) if x.rotation == cyc([a, a2, c, b]) => Ok(QuadColour::Eta1),
        (Some(x), None) if x.rotation == cyc([a, b, c, a2]) => Ok(QuadColour::Eta3),
        (None, Some(x)) if x.rotation == cyc([a, a2, b, c]) => Ok(QuadColour::Eta2),
        (None, Some(x)) if x.rotation == cyc([a, c, b, a2]) => Ok(QuadColour::Eta4),
        _ => Err(violation("crossing rotation does not alternate between the edges")),
    }
}

/// How the quads `{a, a2} x {b, c}` over `a <_A a2`, `b` in `B`, `c` in `C`
/// are coloured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "colour", rename_all = "snake_case")]
pub enum ColourPattern {
    /// There are no quads.
    Vacuous,
    Uniform(QuadColour),
    Mixed,
}

impl ColourPattern {
    fn add(self, c: QuadColour) -> Self {
        match self {
            ColourPattern::Vacuous => ColourPattern::Uniform(c),
            ColourPattern::Uniform(x) if x == c => self,
            _ => ColourPattern::Mixed,
        }
    }

    fn merge(self, other: ColourPattern) -> Self {
        match (self, other) {
            (ColourPattern::Vacuous, p) | (p, ColourPattern::Vacuous) => p,
            (ColourPattern::Uniform(x), ColourPattern::Uniform(y)) if x == y => self,
            _ => ColourPattern::Mixed,
        }
    }
}

pub fn colour_pattern(
    d: &AbstractDrawing,
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
) -> Result<ColourPattern, ExtractionError> {
    let mut out = ColourPattern::Vacuous;
    for (&x, &x2) in a.iter().tuple_combinations() {
        for &y in b {
            for &z in c {
                out = out.add(colour_quad(d, x, x2, y, z)?);
            }
        }
    }
    Ok(out)
}

/// `k`-subsets of `0..n` in colex order.
#[derive(Debug, Clone)]
pub struct Colex {
    n: usize,
    current: Vec<usize>,
    done: bool,
}

impl Colex {
    pub fn new(n: usize, k: usize) -> Self {
        Colex { n, current: (0..k).collect(), done: k > n }
    }
}

impl Iterator for Colex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let k = self.current.len();
        let mut i = 0;
        loop {
            if i == k {
                self.done = true;
                break;
            }
            let limit = if i + 1 < k { self.current[i + 1] } else { self.n };
            if self.current[i] + 1 < limit {
                self.current[i] += 1;
                for (t, slot) in self.current[..i].iter_mut().enumerate() {
                    *slot = t;
                }
                break;
            }
            i += 1;
        }
        Some(out)
    }
}

/// Subpermutations of `p` of size `k`, colex order on positions.
fn subperms(p: &Permutation, k: usize) -> impl Iterator<Item = Permutation> + '_ {
    Colex::new(p.len(), k).map(move |idx| p.pick(&idx))
}

/// Counts candidate evaluations against a budget.
#[derive(Debug, Clone)]
pub struct Meter {
    used: u64,
    budget: u64,
}

impl Meter {
    pub fn new(budget: u64) -> Self {
        Meter { used: 0, budget }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    fn tick(&mut self) -> Result<(), ExtractionError> {
        self.used += 1;
        if self.used > self.budget {
            Err(ExtractionError::BudgetExceeded(self.budget))
        } else {
            Ok(())
        }
    }
}

/// Target sizes for the stages of [`extract_canonical`].
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StageSchedule {
    /// Try every size from the current one down to the target.
    #[default]
    GreedyLargest,
    /// Each stage asks for half the current size, never below the target.
    Halving,
    /// Stage `k` asks for `sizes[k]` (the target once the list runs out).
    Fixed { sizes: Vec<usize> },
}

impl StageSchedule {
    /// Sizes tried at stage `k`, largest first.
    pub fn candidates(&self, k: usize, current: usize, n: usize) -> Vec<usize> {
        match self {
            StageSchedule::GreedyLargest => (n..=current).rev().collect(),
            StageSchedule::Halving => vec![current.div_ceil(2).clamp(n, current)],
            StageSchedule::Fixed { sizes } => vec![sizes.get(k).copied().unwrap_or(n).clamp(n, current)],
        }
    }

    /// Smallest class size at which no stage is clamped at the target `n`.
    pub fn minimal_input_size(&self, m: usize, n: usize) -> usize {
        match self {
            StageSchedule::GreedyLargest => n,
            StageSchedule::Halving => {
                let stages = stage_count_bound(m) as u32;
                n.checked_shl(stages).filter(|s| s >> stages == n).unwrap_or(usize::MAX)
            }
            StageSchedule::Fixed { sizes } => sizes.iter().copied().chain([n]).max().expect("nonempty"),
        }
    }
}

/// Largest number of stages [`extract_canonical`] can run for `m` classes.
pub fn stage_count_bound(m: usize) -> usize {
    let triples = if m == 0 { 0 } else { m * ((m - 1) / 2) * (m / 2) };
    1 + 2 * m + triples
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtractConfig {
    pub budget: u64,
    pub schedule: StageSchedule,
}

impl Default for ExtractConfig {
    fn default() -> Self {
        ExtractConfig { budget: DEFAULT_BUDGET, schedule: StageSchedule::default() }
    }
}

/// Subclasses on which every two classes induce a signed 1-page drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairwiseOnePageCertificate {
    pub classes: Vec<Permutation>,
    pub sign: SignFunction,
}

impl PairwiseOnePageCertificate {
    pub fn verify(&self, d: &AbstractDrawing) -> bool {
        let m = self.classes.len() as u32;
        (1..=m).tuple_combinations().all(|(i, j)| {
            let (ci, cj) = (&self.classes[i as usize - 1], &self.classes[j as usize - 1]);
            let p = Permutation::concat([(self.sign.get(j, i), ci), (self.sign.get(i, j), cj)]).expect("disjoint");
            is_rho_drawing(d, &CyclicOrder::from_permutation(&p), &bipartite_edges(ci, cj))
        })
    }
}

const SIGN_PAIRS: [(Sign, Sign); 4] =
    [(Sign::Plus, Sign::Plus), (Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus), (Sign::Minus, Sign::Minus)];

fn pair_signs(d: &AbstractDrawing, a: &Permutation, b: &Permutation) -> Option<(Sign, Sign)> {
    let es = bipartite_edges(a, b);
    SIGN_PAIRS.iter().copied().find(|&(s, u)| {
        let p = Permutation::concat([(s, a), (u, b)]).expect("disjoint");
        is_rho_drawing(d, &CyclicOrder::from_permutation(&p), &es)
    })
}

fn check_sizes(classes: &[Permutation], q: usize) -> Result<(), ExtractionError> {
    if q == 0 {
        return Err(ExtractionError::Precondition("target size must be positive".into()));
    }
    if let Some((k, c)) = classes.iter().enumerate().find(|(_, c)| c.len() < q) {
        return Err(ExtractionError::Precondition(format!("class {} has {} < {q} vertices", k + 1, c.len())));
    }
    Ok(())
}

/// Size-`q` subclasses of `d`'s classes that are pairwise 1-page.
pub fn find_pairwise_onepage(
    d: &AbstractDrawing,
    q: usize,
    cfg: &ExtractConfig,
) -> Result<PairwiseOnePageCertificate, ExtractionError> {
    pairwise_onepage(d, d.classes(), q, &mut Meter::new(cfg.budget))
}

type PairKey = (usize, Vec<usize>, usize, Vec<usize>);

struct PairwiseSearch<'a> {
    d: &'a AbstractDrawing,
    classes: &'a [Permutation],
    q: usize,
    memo: HashMap<PairKey, Option<(Sign, Sign)>>,
    meter: &'a mut Meter,
}

impl PairwiseSearch<'_> {
    fn dfs(&mut self, chosen: &mut Vec<Vec<usize>>, signs: &mut BTreeMap<(u32, u32), Sign>) -> Result<bool, ExtractionError> {
        let k = chosen.len();
        if k == self.classes.len() {
            return Ok(true);
        }
        for idx in Colex::new(self.classes[k].len(), self.q) {
            self.meter.tick()?;
            let mut found = Vec::new();
            for (l, prev) in chosen.iter().enumerate() {
                let key = (l, prev.clone(), k, idx.clone());
                let (d, classes) = (self.d, self.classes);
                let verdict = *self
                    .memo
                    .entry(key)
                    .or_insert_with(|| pair_signs(d, &classes[l].pick(prev), &classes[k].pick(&idx)));
                match verdict {
                    Some(s) => found.push(s),
                    None => break,
                }
            }
            if found.len() < k {
                continue;
            }
            for (l, &(s, u)) in found.iter().enumerate() {
                let (i, j) = (l as u32 + 1, k as u32 + 1);
                signs.insert((j, i), s);
                signs.insert((i, j), u);
            }
            chosen.push(idx);
            if self.dfs(chosen, signs)? {
                return Ok(true);
            }
            chosen.pop();
        }
        Ok(false)
    }
}

pub(crate) fn pairwise_onepage(
    d: &AbstractDrawing,
    classes: &[Permutation],
    q: usize,
    meter: &mut Meter,
) -> Result<PairwiseOnePageCertificate, ExtractionError> {
    check_sizes(classes, q)?;
    let mut search = PairwiseSearch { d, classes, q, memo: HashMap::new(), meter };
    let mut chosen = Vec::new();
    let mut signs = BTreeMap::new();
    if !search.dfs(&mut chosen, &mut signs)? {
        return Err(ExtractionError::NotFound { what: "a pairwise 1-page subdrawing".into(), q });
    }
    let cert = PairwiseOnePageCertificate {
        classes: classes.iter().zip(&chosen).map(|(c, idx)| c.pick(idx)).collect(),
        sign: SignFunction::from_fn(classes.len(), |j, i| signs[&(j, i)]),
    };
    debug_assert!(cert.verify(d));
    Ok(cert)
}

/// Subpermutations `a` and `groups` of one monochromatic candidate, with the
/// colour pattern of every group pair `(l, k)`, `l < k`.
#[derive(Debug, Clone)]
struct Candidate {
    a: Permutation,
    groups: Vec<Permutation>,
    colours: BTreeMap<(usize, usize), ColourPattern>,
}

struct MonoSearch<'a> {
    d: &'a AbstractDrawing,
    groups: &'a [Permutation],
    q: usize,
    accept: &'a dyn Fn(QuadColour) -> bool,
    meter: &'a mut Meter,
    a: Permutation,
    cells: HashMap<(Vertex, Vertex), ColourPattern>,
}

type Verify<'a> = dyn FnMut(&Candidate) -> Result<bool, ExtractionError> + 'a;

impl MonoSearch<'_> {
    fn cell(&mut self, b: Vertex, c: Vertex) -> Result<ColourPattern, ExtractionError> {
        if let Some(&p) = self.cells.get(&(b, c)) {
            return Ok(p);
        }
        let mut p = ColourPattern::Vacuous;
        for (&x, &x2) in self.a.iter().tuple_combinations() {
            p = p.add(colour_quad(self.d, x, x2, b, c)?);
            if p == ColourPattern::Mixed {
                break;
            }
        }
        self.cells.insert((b, c), p);
        Ok(p)
    }

    /// The common pattern of `s x t`, or `None` if it is mixed or rejected.
    fn block(&mut self, s: &Permutation, t: &Permutation) -> Result<Option<ColourPattern>, ExtractionError> {
        let mut p = ColourPattern::Vacuous;
        for &b in s {
            for &c in t {
                p = p.merge(self.cell(b, c)?);
                match p {
                    ColourPattern::Mixed => return Ok(None),
                    ColourPattern::Uniform(x) if !(self.accept)(x) => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(Some(p))
    }

    fn dfs(&mut self, chosen: &mut Vec<Permutation>, colours: &mut BTreeMap<(usize, usize), ColourPattern>, verify: &mut Verify<'_>) -> Result<Option<Candidate>, ExtractionError> {
        let k = chosen.len();
        if k == self.groups.len() {
            let cand = Candidate { a: self.a.clone(), groups: chosen.clone(), colours: colours.clone() };
            return Ok(verify(&cand)?.then_some(cand));
        }
        let group = &self.groups[k];
        for t in subperms(group, self.q) {
            self.meter.tick()?;
            let mut blocks = Vec::new();
            for s in chosen.iter() {
                match self.block(s, &t)? {
                    Some(p) => blocks.push(p),
                    None => break,
                }
            }
            if blocks.len() < k {
                continue;
            }
            for (l, p) in blocks.into_iter().enumerate() {
                colours.insert((l, k), p);
            }
            chosen.push(t);
            if let Some(found) = self.dfs(chosen, colours, verify)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }
}

/// The colex-least `(A', groups')` of size `q` in which every group pair is
/// monochromatic in an accepted colour and `verify` holds.
fn mono_search(
    d: &AbstractDrawing,
    a: &Permutation,
    groups: &[Permutation],
    q: usize,
    accept: &dyn Fn(QuadColour) -> bool,
    meter: &mut Meter,
    verify: &mut Verify<'_>,
) -> Result<Option<Candidate>, ExtractionError> {
    check_sizes(std::slice::from_ref(a), q)?;
    check_sizes(groups, q)?;
    for ap in subperms(a, q) {
        meter.tick()?;
        let mut search =
            MonoSearch { d, groups, q, accept, meter: &mut *meter, a: ap, cells: HashMap::new() };
        if let Some(found) = search.dfs(&mut Vec::new(), &mut BTreeMap::new(), verify)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

fn require_rho(d: &AbstractDrawing, parts: &[(Sign, &Permutation)], what: &str) -> Result<(), ExtractionError> {
    let p = Permutation::concat(parts.iter().copied())
        .map_err(|e| ExtractionError::Precondition(format!("{what}: {e}")))?;
    let es = parts[1..].iter().flat_map(|(_, g)| bipartite_edges(parts[0].1, g)).collect();
    if is_rho_drawing(d, &CyclicOrder::from_permutation(&p), &es) {
        Ok(())
    } else {
        Err(ExtractionError::Precondition(format!("{what} is not a 1-page drawing")))
    }
}

fn one_page_union(d: &AbstractDrawing, a: &Permutation, groups: &[&Permutation]) -> bool {
    let parts: Vec<(Sign, &Permutation)> = std::iter::once((Sign::Plus, a)).chain(groups.iter().map(|g| (Sign::Plus, *g))).collect();
    let p = Permutation::concat(parts).expect("disjoint");
    let es = groups.iter().flat_map(|g| bipartite_edges(a, g)).collect();
    is_rho_drawing(d, &CyclicOrder::from_permutation(&p), &es)
}

/// Which of the two groups comes first around `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairOrder {
    BC,
    CB,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderTwo {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
    pub which: PairOrder,
}

/// Size-`q` subpermutations on which `E(A', B' u C')` is an
/// `[[A' . B' . C']]`- or `[[A' . C' . B']]`-drawing.
pub fn order_two(
    d: &AbstractDrawing,
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
    q: usize,
    cfg: &ExtractConfig,
) -> Result<OrderTwo, ExtractionError> {
    let o = order_groups(d, a, &[b.clone(), c.clone()], q, &mut Meter::new(cfg.budget))?;
    let which = if o.pi.as_slice() == [1, 2] { PairOrder::BC } else { PairOrder::CB };
    let mut groups = o.groups.into_iter();
    let (b, c) = (groups.next().expect("two groups"), groups.next().expect("two groups"));
    Ok(OrderTwo { a: o.a, b, c, which })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedGroups {
    pub a: Permutation,
    /// Subpermutations of the input groups, in input order.
    pub groups: Vec<Permutation>,
    /// 1-based group indices in their order around `A`.
    pub pi: Permutation<u32>,
}

/// Size-`q` subpermutations and a group order `pi` such that the union is an
/// `[[A' . B'_pi(1) . ... . B'_pi(r)]]`-drawing.
pub fn order_classes(
    d: &AbstractDrawing,
    a: &Permutation,
    groups: &[Permutation],
    q: usize,
    cfg: &ExtractConfig,
) -> Result<OrderedGroups, ExtractionError> {
    order_groups(d, a, groups, q, &mut Meter::new(cfg.budget))
}

/// Orders groups by pairwise precedence; `Err` carries a 3-cycle.
fn tournament(r: usize, colours: &BTreeMap<(usize, usize), ColourPattern>) -> Result<Vec<usize>, (u32, u32, u32)> {
    let before = |x: usize, y: usize| {
        if x < y {
            colours[&(x, y)] != ColourPattern::Uniform(QuadColour::Eta1)
        } else {
            colours[&(y, x)] == ColourPattern::Uniform(QuadColour::Eta1)
        }
    };
    let wins: Vec<usize> = (0..r).map(|x| (0..r).filter(|&y| y != x && before(x, y)).count()).collect();
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&x| std::cmp::Reverse(wins[x]));
    if order.iter().enumerate().all(|(p, &x)| wins[x] == r - 1 - p) {
        return Ok(order);
    }
    for (x, y, z) in (0..r).tuple_combinations() {
        if before(x, y) && before(y, z) && before(z, x) {
            return Err((x as u32 + 1, y as u32 + 1, z as u32 + 1));
        }
        if before(x, z) && before(z, y) && before(y, x) {
            return Err((x as u32 + 1, z as u32 + 1, y as u32 + 1));
        }
    }
    unreachable!("a non-transitive tournament has a 3-cycle")
}

pub(crate) fn order_groups(
    d: &AbstractDrawing,
    a: &Permutation,
    groups: &[Permutation],
    q: usize,
    meter: &mut Meter,
) -> Result<OrderedGroups, ExtractionError> {
    for (k, g) in groups.iter().enumerate() {
        require_rho(d, &[(Sign::Plus, a), (Sign::Plus, g)], &format!("E(A, B{})", k + 1))?;
    }
    let r = groups.len();
    let accept = |c: QuadColour| matches!(c, QuadColour::Eta1 | QuadColour::Eta2);
    let mut verify = |cand: &Candidate| -> Result<bool, ExtractionError> {
        let order = tournament(r, &cand.colours).map_err(|(x, y, z)| ExtractionError::TransitivityViolation(x, y, z))?;
        let ordered: Vec<&Permutation> = order.iter().map(|&k| &cand.groups[k]).collect();
        Ok(one_page_union(d, &cand.a, &ordered))
    };
    let found = mono_search(d, a, groups, q, &accept, meter, &mut verify)?
        .ok_or_else(|| ExtractionError::NotFound { what: format!("an order of {r} groups"), q })?;
    let order = tournament(r, &found.colours).expect("verified");
    let pi = Permutation::new(order.iter().map(|&k| k as u32 + 1).collect()).expect("distinct");
    Ok(OrderedGroups { a: found.a, groups: found.groups, pi })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Separated {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

/// Size-`q` subpermutations with no crossing between `E(A', B')` and
/// `E(A', C')`.
pub fn separate_sides(
    d: &AbstractDrawing,
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
    q: usize,
    cfg: &ExtractConfig,
) -> Result<Separated, ExtractionError> {
    separate(d, a, b, c, q, &mut Meter::new(cfg.budget))
}

pub(crate) fn separate(
    d: &AbstractDrawing,
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
    q: usize,
    meter: &mut Meter,
) -> Result<Separated, ExtractionError> {
    require_rho(d, &[(Sign::Plus, a), (Sign::Plus, b)], "E(A, B)")?;
    require_rho(d, &[(Sign::Minus, a), (Sign::Plus, c)], "E(A, C) against the reversed A")?;
    let accept = |x: QuadColour| x == QuadColour::Eta0;
    let mut verify = |cand: &Candidate| -> Result<bool, ExtractionError> {
        let ab = bipartite_edges(&cand.a, &cand.groups[0]);
        let ac = bipartite_edges(&cand.a, &cand.groups[1]);
        Ok(!ab.iter().any(|&e| ac.iter().any(|&f| d.cross(e, f))))
    };
    let found = mono_search(d, a, &[b.clone(), c.clone()], q, &accept, meter, &mut verify)?
        .ok_or_else(|| ExtractionError::NotFound { what: "crossing-free sides".into(), q })?;
    let mut groups = found.groups.into_iter();
    Ok(Separated { a: found.a, b: groups.next().expect("two"), c: groups.next().expect("two") })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Extraction {
    pub classes: Vec<Permutation>,
    pub template: Template,
    pub report: Vec<CanonicalViolation>,
    pub stages: Vec<StageRecord>,
}

struct Driver<'a> {
    d: &'a AbstractDrawing,
    n: usize,
    cfg: &'a ExtractConfig,
    meter: Meter,
    classes: Vec<Permutation>,
    stages: Vec<StageRecord>,
}

impl Driver<'_> {
    fn size(&self) -> usize {
        self.classes[0].len()
    }

    /// Runs `step` at the schedule's sizes until one succeeds.
    fn stage<T>(
        &mut self,
        label: String,
        mut step: impl FnMut(&AbstractDrawing, &[Permutation], usize, &mut Meter) -> Result<T, ExtractionError>,
    ) -> Result<(T, usize), ExtractionError> {
        let mut last = None;
        for q in self.cfg.schedule.candidates(self.stages.len(), self.size(), self.n) {
            match step(self.d, &self.classes, q, &mut self.meter) {
                Ok(out) => {
                    self.stages.push(StageRecord { stage: label, size: q });
                    return Ok((out, q));
                }
                Err(e @ ExtractionError::NotFound { .. }) => last = Some(e),
                Err(e) => return Err(e),
            }
        }
        Err(last.unwrap_or(ExtractionError::NotFound { what: label, q: self.n }))
    }

    /// Installs new subclasses; untouched classes shrink to their prefix.
    fn relabel(&mut self, q: usize, updates: Vec<(u32, Permutation)>) {
        for c in &mut self.classes {
            *c = c.prefix(q);
        }
        for (i, p) in updates {
            self.classes[i as usize - 1] = p;
        }
    }
}

/// Finds size-`n` subclasses of `d`'s classes inducing a canonical drawing,
/// together with its template.
pub fn extract_canonical(d: &AbstractDrawing, n: usize, cfg: &ExtractConfig) -> Result<Extraction, ExtractionError> {
    let classes = d.classes().to_vec();
    let m = classes.len();
    if m == 0 {
        return Err(ExtractionError::Precondition("the drawing has no classes".into()));
    }
    if classes.iter().any(|c| c.len() != classes[0].len()) {
        return Err(ExtractionError::Precondition("classes differ in size".into()));
    }
    check_sizes(&classes, n)?;
    if n == 1 {
        let picked: Vec<Permutation> = classes.iter().map(|c| c.prefix(1)).collect();
        let sub = d.induce_classes(&picked)?;
        let template = template_of(&sub, &picked)?;
        let stages = vec![StageRecord { stage: "rotations".into(), size: 1 }];
        return Ok(Extraction { classes: picked, template, report: Vec::new(), stages });
    }
    let mut drv = Driver { d, n, cfg, meter: Meter::new(cfg.budget), classes, stages: Vec::new() };
    let (cert, _) = drv.stage("pairwise".into(), pairwise_onepage)?;
    let sigma = cert.sign;
    drv.classes = cert.classes;
    let mut sides: Vec<[Permutation<u32>; 2]> = vec![[Permutation::empty(), Permutation::empty()]; m];
    for (k, own) in [(0, Sign::Plus), (1, Sign::Minus)] {
        for i in 1..=m as u32 {
            let members: Vec<u32> =
                (1..=m as u32).filter(|&j| j != i && sigma.get(j, i) == own).collect();
            if members.is_empty() {
                continue;
            }
            let label = format!("{}({i})", if own == Sign::Plus { "plus" } else { "minus" });
            let (o, q) = drv.stage(label, |d, cl, q, meter| {
                let a = cl[i as usize - 1].signed(own);
                let groups: Vec<Permutation> = members.iter().map(|&j| cl[j as usize - 1].signed(sigma.get(i, j))).collect();
                order_groups(d, &a, &groups, q, meter)
            })?;
            let mut updates = vec![(i, o.a.signed(own))];
            updates.extend(members.iter().zip(&o.groups).map(|(&j, g)| (j, g.signed(sigma.get(i, j)))));
            drv.relabel(q, updates);
            sides[i as usize - 1][k] = Permutation::new(o.pi.iter().map(|&p| members[p as usize - 1]).collect()).expect("distinct");
        }
    }
    for i in 1..=m as u32 {
        for (j, k) in sigma.plus_set(i).into_iter().cartesian_product(sigma.minus_set(i).into_iter().collect_vec()) {
            let (s, _) = drv.stage(format!("separate({i},{j},{k})"), |d, cl, q, meter| {
                let a = &cl[i as usize - 1];
                let b = cl[j as usize - 1].signed(sigma.get(i, j));
                let c = cl[k as usize - 1].signed(sigma.get(i, k));
                separate(d, a, &b, &c, q, meter)
            })?;
            let q = s.a.len();
            drv.relabel(q, vec![(i, s.a), (j, s.b.signed(sigma.get(i, j))), (k, s.c.signed(sigma.get(i, k)))]);
        }
    }
    if drv.size() > n {
        drv.relabel(n, Vec::new());
    }
    let template = Template::new(sides.into_iter().map(|[plus, minus]| ClassSides { plus, minus }).collect())
        .expect("sides partition the other classes");
    let sub = d.induce_classes(&drv.classes)?;
    let report = verify_canonical(&sub, &drv.classes, &template);
    if !report.is_empty() {
        return Err(ExtractionError::Unverified { template: Box::new(template), report });
    }
    debug_assert!(drv.classes.iter().all(|c| c.len() == n));
    Ok(Extraction { classes: drv.classes, template, report, stages: drv.stages })
}
