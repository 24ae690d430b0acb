//! Forbidden graph classes and the extremal / non-extremal split.
//!
//! A graph on `n` nodes is forbidden when it is
//! - `F1`: edgeless;
//! - `oF2`: `n` odd and complete;
//! - `eF2`: `n` even with every degree at least `n - 2`;
//! - `eF3`: `n` even with `n - 1` nodes forming a clique and the remaining node of degree at most 2;
//! - `eF4`: `n` even with one node of degree at most 4, every other node of degree exactly
//!   `n - 2`, and those other nodes not forming a clique.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::bisection::non_neighbor;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ForbiddenKind {
    F1,
    #[serde(rename = "oF2")]
    OF2,
    #[serde(rename = "eF2")]
    EF2,
    #[serde(rename = "eF3")]
    EF3,
    #[serde(rename = "eF4")]
    EF4,
    NotForbidden,
}

impl ForbiddenKind {
    pub fn is_forbidden(self) -> bool {
        self != ForbiddenKind::NotForbidden
    }
}

impl fmt::Display for ForbiddenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ForbiddenKind::F1 => "F1",
            ForbiddenKind::OF2 => "oF2",
            ForbiddenKind::EF2 => "eF2",
            ForbiddenKind::EF3 => "eF3",
            ForbiddenKind::EF4 => "eF4",
            ForbiddenKind::NotForbidden => "not forbidden",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForbiddenClass {
    pub kind: ForbiddenKind,
    /// The low-degree node for `eF3` and `eF4`.
    pub witness: Option<usize>,
}

impl ForbiddenClass {
    fn plain(kind: ForbiddenKind) -> Self {
        ForbiddenClass { kind, witness: None }
    }
}

fn all_but_is_clique(g: &Graph, w: usize) -> bool {
    let rest: Vec<usize> = (0..g.n()).filter(|&v| v != w).collect();
    g.is_clique(&rest)
}

/// First matching class in the order F1, oF2, eF2, eF3, eF4.
pub fn classify_forbidden(g: &Graph) -> ForbiddenClass {
    let n = g.n();
    if g.edge_count() == 0 {
        return ForbiddenClass::plain(ForbiddenKind::F1);
    }
    if n % 2 == 1 {
        if (0..n).all(|v| g.degree(v) + 1 == n) {
            return ForbiddenClass::plain(ForbiddenKind::OF2);
        }
        return ForbiddenClass::plain(ForbiddenKind::NotForbidden);
    }
    if (0..n).all(|v| g.degree(v) + 2 >= n) {
        return ForbiddenClass::plain(ForbiddenKind::EF2);
    }
    let clique_on_rest = g.edge_count() >= Graph::mask_width(n - 1);
    if let Some(w) = (0..n).find(|&w| clique_on_rest && g.degree(w) <= 2 && all_but_is_clique(g, w)) {
        return ForbiddenClass {
            kind: ForbiddenKind::EF3,
            witness: Some(w),
        };
    }
    let ef4 = (0..n).find(|&w| {
        g.degree(w) <= 4
            && (0..n).all(|v| v == w || g.degree(v) + 2 == n)
            && !all_but_is_clique(g, w)
    });
    if let Some(w) = ef4 {
        return ForbiddenClass {
            kind: ForbiddenKind::EF4,
            witness: Some(w),
        };
    }
    ForbiddenClass::plain(ForbiddenKind::NotForbidden)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifierError {
    #[error("the extremal split is defined for an even number of nodes")]
    OddOrder,
}

/// Structure of an extremal graph around its minimum-degree node `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtremalPartition {
    pub u: usize,
    /// Degree `n - 1`, excluding `u`.
    pub a_set: Vec<usize>,
    /// Degree `n - 2`, adjacent to `u`.
    pub b_set: Vec<usize>,
    /// Degree `n - 2`, not adjacent to `u`.
    pub c_set: Vec<usize>,
    /// Mutually non-adjacent pairs of `b_set`, ordered by their smaller id.
    pub companion_pairs: Vec<(usize, usize)>,
}

impl ExtremalPartition {
    pub fn alpha(&self) -> usize {
        self.a_set.len()
    }
    pub fn beta(&self) -> usize {
        self.b_set.len()
    }
    pub fn gamma(&self) -> usize {
        self.c_set.len()
    }
}

/// `Some(partition)` when at most one node has degree below `n - 2`.
pub fn is_extremal(g: &Graph) -> Result<Option<ExtremalPartition>, ClassifierError> {
    let n = g.n();
    if n % 2 == 1 {
        return Err(ClassifierError::OddOrder);
    }
    let low: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 2 < n).collect();
    if low.len() > 1 {
        return Ok(None);
    }
    let u = match low.first() {
        Some(&u) => u,
        None => match (0..n).min_by_key(|&v| g.degree(v)) {
            Some(u) => u,
            None => {
                return Ok(Some(ExtremalPartition {
                    u: 0,
                    a_set: vec![],
                    b_set: vec![],
                    c_set: vec![],
                    companion_pairs: vec![],
                }))
            }
        },
    };
    let mut p = ExtremalPartition {
        u,
        a_set: Vec::new(),
        b_set: Vec::new(),
        c_set: Vec::new(),
        companion_pairs: Vec::new(),
    };
    for v in (0..n).filter(|&v| v != u) {
        if g.degree(v) + 1 == n {
            p.a_set.push(v);
        } else if g.adjacent(u, v) {
            p.b_set.push(v);
        } else {
            p.c_set.push(v);
        }
    }
    for &b in &p.b_set {
        if let Some(m) = non_neighbor(g, b) {
            if b < m {
                p.companion_pairs.push((b, m));
            }
        }
    }
    Ok(Some(p))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub edges: usize,
    pub forbidden: bool,
    pub class: ForbiddenKind,
    pub witness: Option<usize>,
    /// Only for even `n`.
    pub extremal: Option<bool>,
    /// Entry `d` counts the nodes of degree `d`.
    pub degree_histogram: Vec<usize>,
}

impl ClassificationReport {
    pub fn of(g: &Graph) -> Self {
        let c = classify_forbidden(g);
        let mut degree_histogram = vec![0; g.n().max(1)];
        for v in 0..g.n() {
            degree_histogram[g.degree(v)] += 1;
        }
        ClassificationReport {
            n: g.n(),
            edges: g.edge_count(),
            forbidden: c.kind.is_forbidden(),
            class: c.kind,
            witness: c.witness,
            extremal: is_extremal(g).ok().map(|p| p.is_some()),
            degree_histogram,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(n, edges).unwrap()
    }

    fn k5_plus(attach: &[usize]) -> Graph {
        let mut edges: Vec<_> = Graph::mask_pairs(5).collect();
        edges.extend(attach.iter().map(|&a| (a, 5)));
        graph(6, &edges)
    }

    #[test]
    fn class_examples() {
        assert_eq!(classify_forbidden(&Graph::empty(5)).kind, ForbiddenKind::F1);
        assert_eq!(classify_forbidden(&Graph::complete(5)).kind, ForbiddenKind::OF2);
        assert_eq!(classify_forbidden(&Graph::cycle(4)).kind, ForbiddenKind::EF2);
        assert_eq!(
            classify_forbidden(&k5_plus(&[0, 1])),
            ForbiddenClass { kind: ForbiddenKind::EF3, witness: Some(5) }
        );
        let mut edges: Vec<_> = Graph::mask_pairs(5).filter(|&p| p != (0, 1)).collect();
        edges.extend([(0, 5), (1, 5)]);
        assert_eq!(
            classify_forbidden(&graph(6, &edges)),
            ForbiddenClass { kind: ForbiddenKind::EF4, witness: Some(5) }
        );
        assert_eq!(classify_forbidden(&Graph::path(3)).kind, ForbiddenKind::NotForbidden);
    }

    #[test]
    fn tiny_orders() {
        assert_eq!(classify_forbidden(&Graph::empty(0)).kind, ForbiddenKind::F1);
        assert_eq!(classify_forbidden(&Graph::empty(1)).kind, ForbiddenKind::F1);
        assert_eq!(classify_forbidden(&Graph::empty(2)).kind, ForbiddenKind::F1);
        assert_eq!(classify_forbidden(&Graph::complete(2)).kind, ForbiddenKind::EF2);
    }

    #[test]
    fn extremal_examples() {
        let p = is_extremal(&k5_plus(&[0, 1, 2])).unwrap().unwrap();
        assert_eq!(p.u, 5);
        assert_eq!((p.alpha(), p.beta(), p.gamma()), (3, 0, 2));
        assert_eq!(is_extremal(&Graph::path(4)), Ok(None));
        assert!(is_extremal(&Graph::cycle(4)).unwrap().is_some());
        assert_eq!(is_extremal(&Graph::path(3)), Err(ClassifierError::OddOrder));
    }

    /// Independent reading of the class definitions: any class may hold,
    /// checked over every candidate node.
    fn oracle_forbidden(g: &Graph) -> bool {
        let n = g.n();
        let deg: Vec<usize> = (0..n).map(|v| (0..n).filter(|&w| w != v && g.adjacent(v, w)).count()).collect();
        let clique_without = |w: usize| (0..n).all(|a| (0..n).all(|b| a == b || a == w || b == w || g.adjacent(a, b)));
        let f1 = deg.iter().all(|&d| d == 0);
        let of2 = n % 2 == 1 && deg.iter().all(|&d| d == n - 1);
        let even = n.is_multiple_of(2);
        let ef2 = even && deg.iter().all(|&d| d + 2 >= n);
        let ef3 = even && (0..n).any(|w| deg[w] <= 2 && clique_without(w));
        let ef4 = even
            && (0..n).any(|w| deg[w] <= 4 && (0..n).all(|v| v == w || deg[v] + 2 == n) && !clique_without(w));
        f1 || of2 || ef2 || ef3 || ef4
    }

    #[test]
    fn matches_definitions_exhaustively() {
        for n in 0..=7 {
            for mask in 0..1u64 << Graph::mask_width(n) {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                assert_eq!(classify_forbidden(&g).kind.is_forbidden(), oracle_forbidden(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn ef4_low_node_structure() {
        let mut seen = 0;
        for n in [4usize, 6, 8] {
            let stride = if n == 8 { 101 } else { 1 };
            let mut mask = 0;
            while mask < 1u64 << Graph::mask_width(n) {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                mask += stride;
                let c = classify_forbidden(&g);
                if c.kind != ForbiddenKind::EF4 {
                    continue;
                }
                seen += 1;
                let u = c.witness.unwrap();
                assert!(g.degree(u) == 2 || g.degree(u) == 4, "{g:?}");
                for &a in g.neighbors(u) {
                    let partners = g.neighbors(u).iter().filter(|&&b| b != a && !g.adjacent(a, b)).count();
                    assert_eq!(partners, 1, "{g:?}");
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn extremal_partition_invariants() {
        for n in [2usize, 4, 6, 8] {
            let stride = if n == 8 { 37 } else { 1 };
            let mut mask = 0;
            while mask < 1u64 << Graph::mask_width(n) {
                let g = Graph::from_edge_mask(n, mask).unwrap();
                mask += stride;
                let Some(p) = is_extremal(&g).unwrap() else {
                    assert!((0..n).filter(|&v| g.degree(v) + 2 < n).count() >= 2);
                    continue;
                };
                let mut all: Vec<usize> = [&p.a_set, &p.b_set, &p.c_set].into_iter().flatten().copied().collect();
                all.push(p.u);
                all.sort();
                assert_eq!(all, (0..n).collect::<Vec<_>>());
                assert_eq!(g.degree(p.u), p.alpha() + p.beta());
                if g.degree(p.u) + 2 < n {
                    assert_eq!(p.beta() % 2, 0);
                    assert_eq!(p.companion_pairs.len() * 2, p.beta());
                    for &(a, b) in &p.companion_pairs {
                        assert!(!g.adjacent(a, b));
                        assert!(p.b_set.contains(&a) && p.b_set.contains(&b));
                    }
                }
            }
        }
    }

    #[test]
    fn report_fields() {
        let r = ClassificationReport::of(&Graph::path(4));
        assert!(!r.forbidden);
        assert_eq!(r.degree_histogram, vec![0, 2, 2, 0]);
        assert_eq!(r.extremal, Some(false));
        let json = serde_json::to_value(ClassificationReport::of(&Graph::cycle(4))).unwrap();
        assert_eq!(json["class"], "eF2");
    }
}
