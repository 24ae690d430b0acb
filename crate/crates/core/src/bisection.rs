//! Bisections, deficiencies and the local search that produces the special
//! bisections used by the even-order constructions.
//!
//! A bisection splits the nodes into a side `S` of size `ceil(n/2)` and a side
//! `T` of size `floor(n/2)`. The deficiency of a node is the number of its
//! neighbors on its own side minus the number on the other side. Swapping
//! `x in S` with `y in T` changes the width by `def(x) + def(y) + 2·W(x,y)`,
//! so a bisection that no swap can improve satisfies that sum `>= 0` for
//! every cross pair.

use serde::Serialize;
use thiserror::Error;

use crate::classifier::{classify_forbidden, ForbiddenKind};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BisectionError {
    #[error("side S must have {expected} nodes, got {got}")]
    InvalidSize { expected: usize, got: usize },
    #[error("node {0} listed twice")]
    DuplicateNode(usize),
    #[error("node {node} is out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("bisection covers {got} nodes but the graph has {expected}")]
    OrderMismatch { expected: usize, got: usize },
    #[error("operation requires an even number of nodes")]
    OddOrder,
    #[error("operation requires a non-extremal graph")]
    ExtremalGraph,
    #[error("graph is forbidden ({0})")]
    ForbiddenGraph(ForbiddenKind),
    #[error("narrowing configuration present but no qualifying low-degree node was found")]
    NoEscapeCandidate,
    #[error("bisection is not a zero bisection")]
    NotZero,
    #[error("no node pair qualifies for a zero swap; the graph is structurally forbidden")]
    StructurallyForbidden,
    #[error("search ended on a bisection with no special witness")]
    NoSpecialFound,
    #[error("search exceeded its budget of {budget} iterations")]
    IterationBudgetExceeded { budget: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    S,
    T,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::S => Side::T,
            Side::T => Side::S,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bisection {
    in_s: Vec<bool>,
}

impl Bisection {
    pub fn new(n: usize, side_s: &[usize]) -> Result<Self, BisectionError> {
        let mut in_s = vec![false; n];
        for &v in side_s {
            if v >= n {
                return Err(BisectionError::NodeOutOfRange { node: v, n });
            }
            if std::mem::replace(&mut in_s[v], true) {
                return Err(BisectionError::DuplicateNode(v));
            }
        }
        Self::from_membership(in_s)
    }

    pub fn from_membership(in_s: Vec<bool>) -> Result<Self, BisectionError> {
        let expected = in_s.len().div_ceil(2);
        let got = in_s.iter().filter(|&&b| b).count();
        if got != expected {
            return Err(BisectionError::InvalidSize { expected, got });
        }
        Ok(Bisection { in_s })
    }

    /// `S = {0, .., ceil(n/2) - 1}`.
    pub fn canonical(n: usize) -> Self {
        Bisection {
            in_s: (0..n).map(|v| v < n.div_ceil(2)).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.in_s.len()
    }

    pub fn in_s(&self, v: usize) -> bool {
        self.in_s[v]
    }

    pub fn side_of(&self, v: usize) -> Side {
        if self.in_s[v] {
            Side::S
        } else {
            Side::T
        }
    }

    pub fn side(&self, side: Side) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.side_of(v) == side).collect()
    }

    pub fn side_s(&self) -> Vec<usize> {
        self.side(Side::S)
    }

    pub fn side_t(&self) -> Vec<usize> {
        self.side(Side::T)
    }

    /// Exchanges two nodes on opposite sides.
    pub fn swapped(&self, x: usize, y: usize) -> Bisection {
        assert_ne!(self.in_s[x], self.in_s[y], "swap needs nodes on opposite sides");
        let mut in_s = self.in_s.clone();
        in_s.swap(x, y);
        Bisection { in_s }
    }

    /// For odd `n`: moves `x` out of the larger side. The old smaller side
    /// plus `x` becomes the new `S`.
    pub fn moved_from_s(&self, x: usize) -> Bisection {
        assert!(self.n() % 2 == 1 && self.in_s[x]);
        let in_s = (0..self.n()).map(|v| v == x || !self.in_s[v]).collect();
        Bisection { in_s }
    }

    fn check_order(&self, g: &Graph) -> Result<(), BisectionError> {
        if self.n() != g.n() {
            return Err(BisectionError::OrderMismatch {
                expected: g.n(),
                got: self.n(),
            });
        }
        Ok(())
    }
}

pub fn width(g: &Graph, b: &Bisection) -> usize {
    g.edges().filter(|&(u, v)| b.in_s(u) != b.in_s(v)).count()
}

pub fn deficiency(g: &Graph, b: &Bisection, x: usize) -> i64 {
    let own = g.neighbors(x).iter().filter(|&&w| b.in_s(w) == b.in_s(x)).count() as i64;
    own - (g.degree(x) as i64 - own)
}

pub fn deficiencies(g: &Graph, b: &Bisection) -> Vec<i64> {
    (0..g.n()).map(|x| deficiency(g, b, x)).collect()
}

/// Width change caused by swapping `x` and `y` (on opposite sides).
pub fn swap_delta(g: &Graph, b: &Bisection, x: usize, y: usize) -> i64 {
    deficiency(g, b, x) + deficiency(g, b, y) + 2 * g.adjacent(x, y) as i64
}

fn first_improving_swap(g: &Graph, b: &Bisection, def: &[i64]) -> Option<(usize, usize)> {
    let n = b.n();
    for x in (0..n).filter(|&x| b.in_s(x)) {
        for y in (0..n).filter(|&y| !b.in_s(y)) {
            if def[x] + def[y] + 2 * (g.adjacent(x, y) as i64) < 0 {
                return Some((x, y));
            }
        }
    }
    None
}

/// True if no single cross swap strictly reduces the width.
pub fn is_swap_locally_minimal(g: &Graph, b: &Bisection) -> bool {
    first_improving_swap(g, b, &deficiencies(g, b)).is_none()
}

/// Repeatedly applies the first strictly improving swap in `(x, y)` order
/// until none remains. For odd `n` a node of `S` with negative deficiency is
/// also moved to the smaller side, so the result has `def(x) >= 0` on `S`.
pub fn local_search_bisection(g: &Graph, start: &Bisection) -> Bisection {
    let mut b = start.clone();
    loop {
        let def = deficiencies(g, &b);
        if let Some((x, y)) = first_improving_swap(g, &b, &def) {
            b = b.swapped(x, y);
            continue;
        }
        if g.n() % 2 == 1 {
            if let Some(x) = (0..g.n()).find(|&x| b.in_s(x) && def[x] < 0) {
                b = b.moved_from_s(x);
                continue;
            }
        }
        return b;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BisectionClass {
    Weak,
    Strong,
    Zero,
}

pub fn classify_bisection(g: &Graph, b: &Bisection) -> BisectionClass {
    class_of(&deficiencies(g, b))
}

fn class_of(def: &[i64]) -> BisectionClass {
    if def.iter().any(|&d| d < -1) {
        BisectionClass::Weak
    } else if def.iter().all(|&d| d == 0) {
        BisectionClass::Zero
    } else {
        BisectionClass::Strong
    }
}

/// Degree classes of an even-order graph relative to `n - 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreePartition {
    /// Degree below `n - 2`.
    pub a_set: Vec<usize>,
    /// Degree `n - 2`, unique non-neighbor in `a_set`.
    pub b_set: Vec<usize>,
    /// Degree `n - 2`, unique non-neighbor also of degree `n - 2`.
    pub c_set: Vec<usize>,
    /// Degree `n - 1`.
    pub d_set: Vec<usize>,
}

impl DegreePartition {
    pub fn of(g: &Graph) -> Self {
        let n = g.n();
        let mut p = DegreePartition {
            a_set: Vec::new(),
            b_set: Vec::new(),
            c_set: Vec::new(),
            d_set: Vec::new(),
        };
        for v in 0..n {
            let d = g.degree(v);
            if d + 2 < n {
                p.a_set.push(v);
            } else if d + 1 >= n {
                p.d_set.push(v);
            } else {
                let miss = non_neighbor(g, v).expect("degree n-2 node has a non-neighbor");
                if g.degree(miss) + 2 < n {
                    p.b_set.push(v);
                } else {
                    p.c_set.push(v);
                }
            }
        }
        p
    }

    pub fn alpha(&self) -> usize {
        self.a_set.len()
    }
    pub fn beta(&self) -> usize {
        self.b_set.len()
    }
    pub fn gamma(&self) -> usize {
        self.c_set.len()
    }
    pub fn delta(&self) -> usize {
        self.d_set.len()
    }
}

/// Lowest-id node other than `v` that is not adjacent to `v`.
pub(crate) fn non_neighbor(g: &Graph, v: usize) -> Option<usize> {
    (0..g.n()).find(|&w| w != v && !g.adjacent(v, w))
}

fn low_degree_count(g: &Graph) -> usize {
    (0..g.n()).filter(|&v| g.degree(v) + 2 < g.n()).count()
}

/// Finds `(z_side, clique_side)` when one side holds a node of degree
/// `n - 2` and deficiency `-2` and the other side is a clique of
/// zero-deficiency nodes.
fn narrowing_configuration(g: &Graph, b: &Bisection, def: &[i64]) -> Option<Side> {
    let n = g.n();
    [Side::S, Side::T].into_iter().find(|&z_side| {
        let has_z = (0..n).any(|z| b.side_of(z) == z_side && g.degree(z) + 2 == n && def[z] == -2);
        has_z
            && (0..n).all(|x| b.side_of(x) == z_side || def[x] == 0)
            && g.is_clique(&b.side(z_side.other()))
    })
}

/// When the narrowing configuration applies, builds a clique side of
/// strictly smaller width from a low-degree node `u`, its degree-`n-2`
/// neighbors, half of the mutually-missing degree-`n-2` pairs and enough
/// universal nodes. Returns `None` when the configuration is absent.
pub fn escape_strongly_minimal(g: &Graph, b: &Bisection) -> Result<Option<Bisection>, BisectionError> {
    b.check_order(g)?;
    escape_with(g, b, &deficiencies(g, b))
}

fn escape_with(g: &Graph, b: &Bisection, def: &[i64]) -> Result<Option<Bisection>, BisectionError> {
    if narrowing_configuration(g, b, def).is_none() {
        return Ok(None);
    }
    let n = g.n();
    if n % 2 == 1 {
        return Err(BisectionError::OddOrder);
    }
    if low_degree_count(g) < 2 {
        return Err(BisectionError::ExtremalGraph);
    }
    let parts = DegreePartition::of(g);
    let half = (n / 2) as i64;
    let gamma_half = (parts.gamma() / 2) as i64;
    let threshold = half - gamma_half - parts.delta() as i64 - 1;

    let in_b = membership(n, &parts.b_set);
    let u = parts
        .a_set
        .iter()
        .copied()
        .find(|&u| g.neighbors_in(u, &in_b) as i64 >= threshold)
        .ok_or(BisectionError::NoEscapeCandidate)?;
    let k = g.neighbors_in(u, &in_b) as i64;

    let mut side = vec![u];
    let take_b = k.min(half - gamma_half - 1).max(0) as usize;
    side.extend(g.neighbors(u).iter().copied().filter(|&w| in_b[w]).take(take_b));
    side.extend(
        parts
            .c_set
            .iter()
            .copied()
            .filter(|&c| non_neighbor(g, c).is_some_and(|m| c < m)),
    );
    let take_d = (half - gamma_half - k - 1).max(0) as usize;
    if take_d > parts.delta() {
        return Err(BisectionError::NoEscapeCandidate);
    }
    side.extend(parts.d_set.iter().copied().take(take_d));
    if side.len() != n / 2 {
        return Err(BisectionError::NoEscapeCandidate);
    }
    Bisection::new(n, &side).map(Some)
}

pub(crate) fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in set {
        m[v] = true;
    }
    m
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "kind")]
pub enum SpecialWitness {
    /// `z` has deficiency `<= 0`; the opposite side has all deficiencies
    /// `>= -1` and contains the non-adjacent pair `u < v`, both adjacent to `z`.
    M1 { z: usize, u: usize, v: usize },
    /// `side` has all deficiencies `>= -1` and `u` on it is positive.
    M2 { side: Side, u: usize },
    /// `zero_side` is all zero; the other side lies in `{-1, 0}` with `u` at `-1`.
    M3 { zero_side: Side, u: usize },
}

fn side_min(b: &Bisection, def: &[i64], side: Side) -> Option<i64> {
    (0..b.n()).filter(|&v| b.side_of(v) == side).map(|v| def[v]).min()
}

fn find_m1(g: &Graph, b: &Bisection, def: &[i64]) -> Option<SpecialWitness> {
    for z in 0..g.n() {
        let other = b.side_of(z).other();
        if def[z] > 0 || side_min(b, def, other).is_some_and(|m| m < -1) {
            continue;
        }
        let across: Vec<usize> = g
            .neighbors(z)
            .iter()
            .copied()
            .filter(|&w| b.side_of(w) == other)
            .collect();
        for (i, &u) in across.iter().enumerate() {
            if let Some(&v) = across[i + 1..].iter().find(|&&v| !g.adjacent(u, v)) {
                return Some(SpecialWitness::M1 { z, u, v });
            }
        }
    }
    None
}

fn find_m2(b: &Bisection, def: &[i64]) -> Option<SpecialWitness> {
    (0..b.n()).find_map(|u| {
        let side = b.side_of(u);
        (def[u] > 0 && side_min(b, def, side).is_some_and(|m| m >= -1))
            .then_some(SpecialWitness::M2 { side, u })
    })
}

fn find_m3(b: &Bisection, def: &[i64]) -> Option<SpecialWitness> {
    [Side::S, Side::T].into_iter().find_map(|zero_side| {
        let zero_ok = (0..b.n())
            .filter(|&v| b.side_of(v) == zero_side)
            .all(|v| def[v] == 0);
        let other: Vec<usize> = b.side(zero_side.other());
        let other_ok = other.iter().all(|&v| def[v] == 0 || def[v] == -1);
        let u = other.iter().copied().find(|&v| def[v] == -1);
        match u {
            Some(u) if zero_ok && other_ok => Some(SpecialWitness::M3 { zero_side, u }),
            _ => None,
        }
    })
}

/// Every special kind the bisection satisfies, in the order M1, M2, M3, each
/// with its lexicographically smallest witness.
pub fn detect_special(g: &Graph, b: &Bisection) -> Vec<SpecialWitness> {
    detect_with(g, b, &deficiencies(g, b))
}

fn detect_with(g: &Graph, b: &Bisection, def: &[i64]) -> Vec<SpecialWitness> {
    [find_m1(g, b, def), find_m2(b, def), find_m3(b, def)]
        .into_iter()
        .flatten()
        .collect()
}

/// On a zero bisection that is not M1, swaps a non-adjacent pair `u`, `z`
/// (`u` on a non-clique side, `z` across) with different neighborhoods.
/// The result has equal width and is no longer zero. Returns `None` when the
/// bisection is M1.
pub fn zero_swap(g: &Graph, b: &Bisection) -> Result<Option<Bisection>, BisectionError> {
    b.check_order(g)?;
    if classify_bisection(g, b) != BisectionClass::Zero {
        return Err(BisectionError::NotZero);
    }
    let def = deficiencies(g, b);
    if find_m1(g, b, &def).is_some() {
        return Ok(None);
    }
    for side in [Side::S, Side::T] {
        let members = b.side(side);
        if g.is_clique(&members) {
            continue;
        }
        for &v in members.iter().filter(|&&v| g.degree(v) > 0) {
            let Some(u) = members.iter().copied().find(|&u| u != v && !g.adjacent(u, v)) else {
                continue;
            };
            let Some(z) = g.neighbors(v).iter().copied().find(|&z| b.side_of(z) != side) else {
                continue;
            };
            // u adjacent to z would make the bisection M1 with witness z.
            debug_assert!(!g.adjacent(u, z));
            return Ok(Some(b.swapped(u, z)));
        }
    }
    Err(BisectionError::StructurallyForbidden)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub bisection: Bisection,
    pub class: BisectionClass,
    pub witnesses: Vec<SpecialWitness>,
    /// Passes through the swap / narrowing / zero-swap loop.
    pub iterations: usize,
}

/// Iteration cap for [`strongly_minimal_search`]. The width drops at least
/// every second pass and never exceeds `n²/4`.
pub fn search_budget(n: usize) -> usize {
    n * n + 4
}

/// Local search to a strongly locally minimal bisection that is non-zero or
/// zero-and-M1, starting from the canonical bisection.
pub fn strongly_minimal_search(g: &Graph) -> Result<SearchOutcome, BisectionError> {
    strongly_minimal_search_from(g, &Bisection::canonical(g.n()))
}

pub fn strongly_minimal_search_from(g: &Graph, start: &Bisection) -> Result<SearchOutcome, BisectionError> {
    start.check_order(g)?;
    if g.n() % 2 == 1 {
        return Err(BisectionError::OddOrder);
    }
    let kind = classify_forbidden(g).kind;
    if kind != ForbiddenKind::NotForbidden {
        return Err(BisectionError::ForbiddenGraph(kind));
    }
    if low_degree_count(g) < 2 {
        return Err(BisectionError::ExtremalGraph);
    }
    let budget = search_budget(g.n());
    let mut b = start.clone();
    for iteration in 1..=budget {
        b = local_search_bisection(g, &b);
        let def = deficiencies(g, &b);
        if let Some(narrower) = escape_with(g, &b, &def)? {
            b = narrower;
            continue;
        }
        let class = class_of(&def);
        if class == BisectionClass::Zero {
            if let Some(swapped) = zero_swap(g, &b)? {
                b = swapped;
                continue;
            }
        }
        let witnesses = detect_with(g, &b, &def);
        if witnesses.is_empty() {
            return Err(BisectionError::NoSpecialFound);
        }
        return Ok(SearchOutcome {
            bisection: b,
            class,
            witnesses,
            iterations: iteration,
        });
    }
    Err(BisectionError::IterationBudgetExceeded { budget })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BisectionReport {
    pub side_s: Vec<usize>,
    pub width: usize,
    pub deficiencies: Vec<i64>,
    pub class: BisectionClass,
    pub witnesses: Vec<SpecialWitness>,
}

impl BisectionReport {
    pub fn of(g: &Graph, b: &Bisection) -> Self {
        BisectionReport {
            side_s: b.side_s(),
            width: width(g, b),
            deficiencies: deficiencies(g, b),
            class: classify_bisection(g, b),
            witnesses: detect_special(g, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bis(n: usize, s: &[usize]) -> Bisection {
        Bisection::new(n, s).unwrap()
    }

    /// Width of every bisection of `g`, by brute force over `S` subsets.
    fn all_bisections(n: usize) -> Vec<Bisection> {
        (0u64..1 << n)
            .filter(|m| m.count_ones() as usize == n.div_ceil(2))
            .map(|m| Bisection::from_membership((0..n).map(|v| m >> v & 1 == 1).collect()).unwrap())
            .collect()
    }

    fn min_width(g: &Graph) -> usize {
        all_bisections(g.n()).iter().map(|b| width(g, b)).min().unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Bisection::new(4, &[0]), Err(BisectionError::InvalidSize { expected: 2, got: 1 }));
        assert_eq!(Bisection::new(4, &[0, 0]), Err(BisectionError::DuplicateNode(0)));
        assert_eq!(Bisection::new(4, &[0, 4]), Err(BisectionError::NodeOutOfRange { node: 4, n: 4 }));
        assert_eq!(bis(5, &[4, 0, 2]).side_t(), vec![1, 3]);
    }

    #[test]
    fn width_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(width(&c4, &bis(4, &[0, 1])), 2);
        assert_eq!(width(&c4, &bis(4, &[0, 2])), 4);
        assert_eq!(width(&Graph::path(4), &bis(4, &[0, 1])), 1);
    }

    #[test]
    fn deficiency_examples() {
        assert_eq!(deficiency(&Graph::cycle(4), &bis(4, &[0, 1]), 0), 0);
        assert_eq!(deficiencies(&Graph::path(4), &bis(4, &[0, 1])), vec![1, 0, 0, 1]);
        let star = Graph::star(5);
        let b = bis(6, &[0, 1, 2]);
        assert_eq!(deficiency(&star, &b, 0), -1);
        assert_eq!(deficiencies(&star, &b), vec![-1, 1, 1, -1, -1, -1]);
    }

    #[test]
    fn local_search_examples() {
        let c4 = Graph::cycle(4);
        let r = local_search_bisection(&c4, &bis(4, &[0, 2]));
        assert_eq!(width(&c4, &r), 2);
        assert_eq!(min_width(&c4), 2);

        let p4 = Graph::path(4);
        assert_eq!(min_width(&p4), 1);
        assert_eq!(local_search_bisection(&p4, &bis(4, &[0, 1])), bis(4, &[0, 1]));

        let e = Graph::empty(5);
        let start = bis(5, &[1, 3, 4]);
        assert_eq!(local_search_bisection(&e, &start), start);
    }

    #[test]
    fn odd_local_search_clears_negative_large_side() {
        // Star K_{1,4} from S = {1,2,3}: the center sits alone on T.
        let g = Graph::star(4);
        let r = local_search_bisection(&g, &bis(5, &[1, 2, 3]));
        let def = deficiencies(&g, &r);
        assert!(r.side_s().iter().all(|&x| def[x] >= 0));
        assert!(is_swap_locally_minimal(&g, &r));
    }

    #[test]
    fn escape_examples() {
        assert_eq!(escape_strongly_minimal(&Graph::path(4), &bis(4, &[0, 1])), Ok(None));
        assert_eq!(escape_strongly_minimal(&Graph::cycle(4), &bis(4, &[0, 2])), Ok(None));
    }

    #[test]
    fn escape_narrows_on_six_nodes() {
        // Exhaustive over 6-node graphs: whenever the configuration applies to
        // a non-extremal graph, the escape exists and is strictly narrower.
        let mut fired = 0;
        for mask in 0..1u64 << 15 {
            let g = Graph::from_edge_mask(6, mask).unwrap();
            if low_degree_count(&g) < 2 {
                continue;
            }
            for b in all_bisections(6) {
                let def = deficiencies(&g, &b);
                let applies = narrowing_configuration(&g, &b, &def).is_some();
                match escape_strongly_minimal(&g, &b).unwrap() {
                    Some(next) => {
                        assert!(applies);
                        assert!(width(&g, &next) < width(&g, &b), "{g:?} {b:?}");
                        assert!(g.is_clique(&next.side_s()));
                        fired += 1;
                    }
                    None => assert!(!applies),
                }
            }
        }
        assert!(fired > 0);
    }

    #[test]
    fn escape_rejects_extremal_graphs() {
        let mut rejected = 0;
        for mask in 0..1u64 << 15 {
            let g = Graph::from_edge_mask(6, mask).unwrap();
            if low_degree_count(&g) >= 2 {
                continue;
            }
            for b in all_bisections(6) {
                let def = deficiencies(&g, &b);
                if narrowing_configuration(&g, &b, &def).is_some() {
                    assert_eq!(escape_strongly_minimal(&g, &b), Err(BisectionError::ExtremalGraph));
                    rejected += 1;
                }
            }
        }
        assert!(rejected > 0);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_bisection(&Graph::cycle(4), &bis(4, &[0, 1])), BisectionClass::Zero);
        assert_eq!(classify_bisection(&Graph::path(4), &bis(4, &[0, 1])), BisectionClass::Strong);
        assert_eq!(classify_bisection(&Graph::star(5), &bis(6, &[0, 1, 2])), BisectionClass::Strong);
        assert_eq!(classify_bisection(&Graph::cycle(4), &bis(4, &[0, 2])), BisectionClass::Weak);
    }

    #[test]
    fn special_examples() {
        let w = detect_special(&Graph::path(4), &bis(4, &[0, 1]));
        assert!(w.contains(&SpecialWitness::M2 { side: Side::S, u: 0 }));

        let w = detect_special(&Graph::star(5), &bis(6, &[0, 1, 2]));
        assert!(w.contains(&SpecialWitness::M1 { z: 0, u: 3, v: 4 }));
        assert!(w.contains(&SpecialWitness::M2 { side: Side::S, u: 1 }));
    }

    /// Independent evaluation of the special predicates straight from their
    /// definitions, quantifying over every candidate.
    fn oracle_kinds(g: &Graph, b: &Bisection) -> [bool; 3] {
        let n = g.n();
        let def: Vec<i64> = (0..n)
            .map(|x| {
                let mut d = 0;
                for y in 0..n {
                    if y != x && g.adjacent(x, y) {
                        d += if b.in_s(x) == b.in_s(y) { 1 } else { -1 };
                    }
                }
                d
            })
            .collect();
        let sides = [b.side_s(), b.side_t()];
        let mut kinds = [false; 3];
        for i in 0..2 {
            let (one, other) = (&sides[i], &sides[1 - i]);
            let other_ok = other.iter().all(|&x| def[x] >= -1);
            for &z in one {
                for &u in other {
                    for &v in other {
                        if u != v && def[z] <= 0 && other_ok && !g.adjacent(u, v) && g.adjacent(z, u) && g.adjacent(z, v) {
                            kinds[0] = true;
                        }
                    }
                }
            }
            if one.iter().all(|&x| def[x] >= -1) && one.iter().any(|&x| def[x] > 0) {
                kinds[1] = true;
            }
            if one.iter().all(|&x| def[x] == 0)
                && other.iter().all(|&x| def[x] == 0 || def[x] == -1)
                && other.iter().any(|&x| def[x] == -1)
            {
                kinds[2] = true;
            }
        }
        kinds
    }

    #[test]
    fn detect_special_matches_definitions_exhaustively() {
        let mut m3_seen = 0;
        for n in [4usize, 6] {
            for mask in 0..1u64 << Graph::mask_width(n) {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                for b in all_bisections(n) {
                    let found = detect_special(&g, &b);
                    let kinds = [
                        found.iter().any(|w| matches!(w, SpecialWitness::M1 { .. })),
                        found.iter().any(|w| matches!(w, SpecialWitness::M2 { .. })),
                        found.iter().any(|w| matches!(w, SpecialWitness::M3 { .. })),
                    ];
                    assert_eq!(kinds, oracle_kinds(&g, &b), "{g:?} {b:?}");
                    m3_seen += kinds[2] as usize;
                }
            }
        }
        assert!(m3_seen > 0);
    }

    #[test]
    fn zero_swap_on_zero_non_m1_bisections() {
        // Every zero, swap-locally-minimal, non-M1 bisection of a
        // non-forbidden graph on up to 8 nodes (n = 8 sampled by mask stride).
        let mut swapped = 0;
        for (n, stride) in [(4usize, 1u64), (6, 1), (8, 997)] {
            let mut mask = 0;
            while mask < 1u64 << Graph::mask_width(n) {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                mask += stride;
                if classify_forbidden(&g).kind != ForbiddenKind::NotForbidden {
                    continue;
                }
                for b in all_bisections(n) {
                    if classify_bisection(&g, &b) != BisectionClass::Zero || !is_swap_locally_minimal(&g, &b) {
                        continue;
                    }
                    match zero_swap(&g, &b).unwrap() {
                        None => assert!(detect_special(&g, &b).iter().any(|w| matches!(w, SpecialWitness::M1 { .. }))),
                        Some(t) => {
                            assert_ne!(classify_bisection(&g, &t), BisectionClass::Zero);
                            assert_eq!(width(&g, &t), width(&g, &b));
                            swapped += 1;
                        }
                    }
                }
            }
        }
        assert!(swapped > 0);
    }

    #[test]
    fn zero_swap_guards() {
        assert_eq!(zero_swap(&Graph::path(4), &bis(4, &[0, 1])), Err(BisectionError::NotZero));
        assert_eq!(
            zero_swap(&Graph::empty(4), &bis(4, &[0, 1])),
            Err(BisectionError::StructurallyForbidden)
        );
    }

    #[test]
    fn search_examples() {
        let out = strongly_minimal_search(&Graph::path(4)).unwrap();
        assert!(out.witnesses.iter().any(|w| matches!(w, SpecialWitness::M2 { .. })));

        let out = strongly_minimal_search(&Graph::star(5)).unwrap();
        assert!(out
            .witnesses
            .iter()
            .any(|w| matches!(w, SpecialWitness::M1 { .. } | SpecialWitness::M2 { .. })));

        assert_eq!(strongly_minimal_search(&Graph::path(5)), Err(BisectionError::OddOrder));
        assert_eq!(
            strongly_minimal_search(&Graph::cycle(4)),
            Err(BisectionError::ForbiddenGraph(ForbiddenKind::EF2))
        );
    }

    #[test]
    fn search_finds_special_on_all_six_node_graphs() {
        for mask in 0..1u64 << 15 {
            let g = Graph::from_edge_mask(6, mask).unwrap();
            if classify_forbidden(&g).kind != ForbiddenKind::NotForbidden || low_degree_count(&g) < 2 {
                continue;
            }
            let out = strongly_minimal_search(&g).unwrap();
            assert!(out.iterations <= search_budget(6));
            assert!(!out.witnesses.is_empty());
            assert!(is_swap_locally_minimal(&g, &out.bisection));
        }
    }

    fn graph_bisection_pair() -> impl Strategy<Value = (Graph, Bisection, usize, usize)> {
        (2usize..11).prop_flat_map(|n| {
            let w = Graph::mask_width(n) as u32;
            (
                0u64..(1u64 << w),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                0..n.div_ceil(2),
                0..n / 2,
            )
                .prop_map(move |(mask, perm, i, j)| {
                    let g = Graph::from_edge_mask(n, mask).unwrap();
                    let b = Bisection::new(n, &perm[..n.div_ceil(2)]).unwrap();
                    let (x, y) = (b.side_s()[i], b.side_t()[j]);
                    (g, b, x, y)
                })
        })
    }

    proptest! {
        #[test]
        fn swap_identity((g, b, x, y) in graph_bisection_pair()) {
            let after = width(&g, &b.swapped(x, y)) as i64;
            prop_assert_eq!(after - width(&g, &b) as i64, swap_delta(&g, &b, x, y));
        }

        #[test]
        fn deficiency_sum_identity((g, b, _, _) in graph_bisection_pair()) {
            let s = b.side_s();
            let def = deficiencies(&g, &b);
            let internal = g.edges().filter(|&(u, v)| b.in_s(u) && b.in_s(v)).count() as i64;
            let w = width(&g, &b) as i64;
            prop_assert_eq!(s.iter().map(|&x| def[x]).sum::<i64>(), 2 * internal - w);
            let t = b.side_t();
            let per_node: usize = s.iter().map(|&x| crate::graph::cut_weight(&g, &[x], &t).unwrap()).sum();
            prop_assert_eq!(per_node as i64, w);
        }

        #[test]
        fn local_search_minimality((g, b, _, _) in graph_bisection_pair()) {
            let r = local_search_bisection(&g, &b);
            prop_assert!(width(&g, &r) <= width(&g, &b));
            let def = deficiencies(&g, &r);
            for x in r.side_s() {
                for y in r.side_t() {
                    prop_assert!(swap_delta(&g, &r, x, y) >= 0);
                }
                if g.n() % 2 == 1 {
                    prop_assert!(def[x] >= 0);
                }
            }
        }
    }
}
