//! Undirected simple graphs over dense node ids and binary preference profiles.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node {node} is out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("node {0} appears in both node sets")]
    OverlappingSets(usize),
    #[error("{n} nodes do not fit in a 64-bit edge mask")]
    MaskTooWide { n: usize },
}

/// An undirected simple graph on nodes `0..n`.
///
/// Neighbor lists are stored sorted in CSR form; a dense bit matrix backs
/// constant-time adjacency queries.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    rows: Vec<u64>,
    words: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= n {
                    return Err(GraphError::NodeOutOfRange { node, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
        }
        Ok(Self::build(n, edges.iter().copied()))
    }

    fn build(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut rows = vec![0u64; n * words];
        for (u, v) in edges {
            rows[u * words + v / 64] |= 1 << (v % 64);
            rows[v * words + u / 64] |= 1 << (u % 64);
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(rows.iter().map(|r| r.count_ones() as usize).sum());
        offsets.push(0);
        for u in 0..n {
            for w in 0..words {
                let mut bits = rows[u * words + w];
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    targets.push(w * 64 + b);
                    bits &= bits - 1;
                }
            }
            offsets.push(targets.len());
        }
        Graph {
            n,
            offsets,
            targets,
            rows,
            words,
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::build(n, std::iter::empty())
    }

    pub fn complete(n: usize) -> Self {
        Self::build(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Self {
        Self::build(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a cycle needs at least three nodes");
        Self::build(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// The star `K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Self {
        Self::build(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    /// Number of bits in an edge mask for `n` nodes.
    pub fn mask_width(n: usize) -> usize {
        n * n.saturating_sub(1) / 2
    }

    /// Node pairs in edge-mask bit order: `(0,1), (0,2), .., (0,n-1), (1,2), ..`.
    pub fn mask_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
        (0..n).flat_map(move |u| (u + 1..n).map(move |v| (u, v)))
    }

    /// The labeled graph whose edges are the set bits of `mask`.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self, GraphError> {
        if Self::mask_width(n) > 64 {
            return Err(GraphError::MaskTooWide { n });
        }
        Ok(Self::build(
            n,
            Self::mask_pairs(n)
                .enumerate()
                .filter(|(bit, _)| mask >> bit & 1 == 1)
                .map(|(_, pair)| pair),
        ))
    }

    pub fn edge_mask(&self) -> Result<u64, GraphError> {
        if Self::mask_width(self.n) > 64 {
            return Err(GraphError::MaskTooWide { n: self.n });
        }
        Ok(Self::mask_pairs(self.n)
            .enumerate()
            .filter(|&(_, (u, v))| self.adjacent(u, v))
            .fold(0u64, |acc, (bit, _)| acc | 1 << bit))
    }

    /// Erdős–Rényi `G(n, p)`.
    pub fn random_gnp<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut edges = Vec::new();
        for (u, v) in Self::mask_pairs(n) {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
        Self::build(n, edges.into_iter())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// True if the nodes of `set` are pairwise adjacent.
    pub fn is_clique(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Number of neighbors of `v` inside the set described by `member`.
    pub(crate) fn neighbors_in(&self, v: usize, member: &[bool]) -> usize {
        self.neighbors(v).iter().filter(|&&w| member[w]).count()
    }

    fn check_node(&self, node: usize) -> Result<(), GraphError> {
        if node >= self.n {
            Err(GraphError::NodeOutOfRange { node, n: self.n })
        } else {
            Ok(())
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Number of edges with one endpoint in `a` and the other in `b`.
pub fn cut_weight(g: &Graph, a: &[usize], b: &[usize]) -> Result<usize, GraphError> {
    let mut in_b = vec![false; g.n()];
    for &y in b {
        g.check_node(y)?;
        in_b[y] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut total = 0;
    for &x in a {
        g.check_node(x)?;
        if in_b[x] {
            return Err(GraphError::OverlappingSets(x));
        }
        if !std::mem::replace(&mut seen[x], true) {
            total += g.neighbors_in(x, &in_b);
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileParseError {
    #[error("invalid preference character {0:?}; expected '0' or '1'")]
    BadChar(char),
}

/// A binary preference vector; `true` is preference 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    bits: Vec<bool>,
}

impl Profile {
    pub fn new(bits: Vec<bool>) -> Self {
        Profile { bits }
    }

    pub fn zeros(n: usize) -> Self {
        Profile {
            bits: vec![false; n],
        }
    }

    /// Preference 1 exactly on `ones`.
    pub fn with_ones(n: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zeros(n);
        for v in ones {
            p.bits[v] = true;
        }
        p
    }

    /// Bit `i` of `mask` is agent `i`'s preference.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Profile {
            bits: (0..n).map(|i| mask >> i & 1 == 1).collect(),
        }
    }

    pub fn to_mask(&self) -> u64 {
        debug_assert!(self.bits.len() <= 64);
        self.bits
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &b)| acc | (b as u64) << i)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, v: usize) -> bool {
        self.bits[v]
    }

    pub fn set(&mut self, v: usize, value: bool) {
        self.bits[v] = value;
    }

    pub fn flip(&mut self, v: usize) {
        self.bits[v] = !self.bits[v];
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn ones_count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn zeros_count(&self) -> usize {
        self.bits.len() - self.ones_count()
    }

    /// Agents holding preference 1, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn hamming(&self, other: &Profile) -> usize {
        self.bits
            .iter()
            .zip(&other.bits)
            .filter(|(a, b)| a != b)
            .count()
    }

    /// True if every preference in `self` at 1 is also 1 in `other`.
    pub fn dominated_by(&self, other: &Profile) -> bool {
        self.bits.iter().zip(&other.bits).all(|(&a, &b)| !a || b)
    }
}

/// Number of agents with preference 1.
pub fn ones_count(s: &Profile) -> usize {
    s.ones_count()
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Profile({self})")
    }
}

impl FromStr for Profile {
    type Err = ProfileParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(ProfileParseError::BadChar(other)),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Profile::new)
    }
}

impl serde::Serialize for Profile {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn path_three() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 2, 1]);
        assert_eq!(g, Graph::path(3));
    }

    #[test]
    fn empty_and_cycle() {
        let g = Graph::from_edges(4, &[]).unwrap();
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.n(), 4);
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.degrees(), vec![2; 4]);
        assert_eq!(c4, Graph::cycle(4));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.neighbors(0), &[1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            Graph::from_edges(3, &[(0, 3)]),
            Err(GraphError::NodeOutOfRange { node: 3, n: 3 })
        );
        assert_eq!(Graph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn cut_weight_examples() {
        let c4 = Graph::cycle(4);
        assert_eq!(cut_weight(&c4, &[0, 1], &[2, 3]), Ok(2));
        assert_eq!(cut_weight(&c4, &[0, 2], &[1, 3]), Ok(4));
        assert_eq!(cut_weight(&c4, &[0], &[2]), Ok(0));
        assert_eq!(
            cut_weight(&c4, &[0, 1], &[1, 2]),
            Err(GraphError::OverlappingSets(1))
        );
    }

    #[test]
    fn ones_count_examples() {
        assert_eq!(ones_count(&"010".parse().unwrap()), 1);
        assert_eq!(ones_count(&Profile::zeros(5)), 0);
        assert_eq!(ones_count(&"1111".parse().unwrap()), 4);
    }

    #[test]
    fn profile_text() {
        let p: Profile = "10010".parse().unwrap();
        assert_eq!(p.to_string(), "10010");
        assert_eq!(p.to_mask(), 0b01001);
        assert_eq!(Profile::from_mask(5, 0b01001), p);
        assert!("10a".parse::<Profile>().is_err());
    }

    #[test]
    fn edge_mask_order() {
        let pairs: Vec<_> = Graph::mask_pairs(4).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let g = Graph::from_edge_mask(4, 0b100001).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert_eq!(g.edge_mask(), Ok(0b100001));
    }

    #[test]
    fn wide_adjacency_rows() {
        let g = Graph::from_edges(130, &[(0, 129), (64, 65), (63, 64)]).unwrap();
        assert!(g.adjacent(129, 0));
        assert!(g.adjacent(64, 63));
        assert!(!g.adjacent(0, 64));
        assert_eq!(g.neighbors(64), &[63, 65]);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (1usize..12).prop_flat_map(|n| {
            let w = Graph::mask_width(n) as u32;
            (Just(n), 0u64..(1u64 << w))
                .prop_map(|(n, mask)| Graph::from_edge_mask(n, mask).unwrap())
        })
    }

    fn arb_graph_and_split() -> impl Strategy<Value = (Graph, Vec<u8>)> {
        arb_graph().prop_flat_map(|g| {
            let n = g.n();
            (Just(g), proptest::collection::vec(0u8..3, n))
        })
    }

    proptest! {
        #[test]
        fn handshake(g in arb_graph()) {
            prop_assert_eq!(g.degrees().iter().sum::<usize>(), 2 * g.edge_count());
            for u in 0..g.n() {
                for &v in g.neighbors(u) {
                    prop_assert!(g.adjacent(v, u));
                    prop_assert!(g.neighbors(v).contains(&u));
                }
            }
        }

        #[test]
        fn cut_weight_additive_and_symmetric((g, labels) in arb_graph_and_split()) {
            let a: Vec<usize> = (0..g.n()).filter(|&v| labels[v] == 0).collect();
            let b: Vec<usize> = (0..g.n()).filter(|&v| labels[v] == 1).collect();
            let whole = cut_weight(&g, &a, &b).unwrap();
            prop_assert_eq!(whole, cut_weight(&g, &b, &a).unwrap());
            let by_node: usize = a.iter().map(|&x| cut_weight(&g, &[x], &b).unwrap()).sum();
            prop_assert_eq!(whole, by_node);
        }
    }
}
