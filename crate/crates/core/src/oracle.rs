//! Brute-force ground truth for small graphs: exhaustive reachability of the
//! nondeterministic dynamics and exhaustive per-graph decisions.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;
use thiserror::Error;

use crate::classifier::{classify_forbidden, ForbiddenKind};
use crate::decider::{is_minority_win, max_ones_stable, DeciderError};
use crate::dynamics::check_profile;
use crate::graph::{Graph, Profile};

/// Largest order accepted by [`reachable_stable_set`].
pub const MAX_REACH_N: usize = 16;
/// Largest order accepted by [`oracle_is_mbm_graph`].
pub const MAX_GRAPH_N: usize = 12;
/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUM_N: usize = 7;
/// Every this-many minority profiles, the decider is cross-checked by search.
pub const SPOT_CHECK_STRIDE: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{n} nodes exceeds the oracle limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error(transparent)]
    Decider(#[from] DeciderError),
    #[error("profile {profile}: two-phase says {decider}, exhaustive search says {exhaustive}")]
    Disagreement {
        profile: Profile,
        decider: bool,
        exhaustive: bool,
    },
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        return Err(OracleError::TooLarge { n, limit });
    }
    Ok(())
}

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect()
}

/// Stable profiles reachable from `s0` by any sequence of legal updates.
pub fn reachable_stable_set(g: &Graph, s0: &Profile) -> Result<BTreeSet<Profile>, OracleError> {
    reachable_stable_set_with_limit(g, s0, MAX_REACH_N)
}

pub fn reachable_stable_set_with_limit(g: &Graph, s0: &Profile, limit: usize) -> Result<BTreeSet<Profile>, OracleError> {
    let n = g.n();
    guard(n, limit.min(31))?;
    check_profile(g, s0).map_err(DeciderError::from)?;
    Ok(reachable_stable_masks(g, s0.to_mask() as u32)
        .into_iter()
        .map(|m| Profile::from_mask(n, m as u64))
        .collect())
}

fn reachable_stable_masks(g: &Graph, start: u32) -> Vec<u32> {
    let n = g.n();
    let nbr = neighbor_masks(g);
    let deg: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut visited = vec![0u64; (1usize << n).div_ceil(64)];
    let mut queue = VecDeque::from([start]);
    visited[start as usize / 64] |= 1 << (start % 64);
    let mut stable = Vec::new();
    while let Some(state) = queue.pop_front() {
        let mut moved = false;
        for v in 0..n {
            let ones = (state & nbr[v]).count_ones();
            let opposed = if state >> v & 1 == 1 { deg[v] - ones } else { ones };
            if 2 * opposed > deg[v] {
                moved = true;
                let next = state ^ 1 << v;
                let (word, bit) = (next as usize / 64, next % 64);
                if visited[word] >> bit & 1 == 0 {
                    visited[word] |= 1 << bit;
                    queue.push_back(next);
                }
            }
        }
        if !moved {
            stable.push(state);
        }
    }
    stable
}

/// True if some reachable stable profile has at most `n/2` zeros.
pub fn oracle_is_mbm_profile(g: &Graph, s0: &Profile) -> Result<bool, OracleError> {
    guard(g.n(), MAX_REACH_N)?;
    check_profile(g, s0).map_err(DeciderError::from)?;
    crate::decider::check_minority(s0)?;
    Ok(reachable_stable_masks(g, s0.to_mask() as u32)
        .into_iter()
        .any(|m| is_minority_win(g.n(), m.count_ones() as usize)))
}

/// Profiles whose ones are a strict minority, in ascending mask order.
pub fn minority_profiles(n: usize) -> impl Iterator<Item = Profile> {
    (0u64..1 << n)
        .filter(move |m| 2 * (m.count_ones() as usize) < n)
        .map(move |m| Profile::from_mask(n, m))
}

/// Result of deciding one graph by enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphVerdict {
    pub mbm: bool,
    /// First minority profile in mask order that wins.
    pub witness: Option<Profile>,
    pub profiles_checked: usize,
    pub spot_checks: usize,
}

/// Enumerates every strict-minority profile and decides it with the
/// two-phase procedure. Every [`SPOT_CHECK_STRIDE`]-th profile and the
/// witness are also decided by exhaustive search; a disagreement is an error.
pub fn decide_graph(g: &Graph) -> Result<GraphVerdict, OracleError> {
    let n = g.n();
    guard(n, MAX_GRAPH_N)?;
    let mut verdict = GraphVerdict {
        mbm: false,
        witness: None,
        profiles_checked: 0,
        spot_checks: 0,
    };
    for (i, s) in minority_profiles(n).enumerate() {
        verdict.profiles_checked += 1;
        let fast = is_minority_win(n, max_ones_stable(g, &s)?);
        if i % SPOT_CHECK_STRIDE == 0 || fast {
            verdict.spot_checks += 1;
            let slow = oracle_is_mbm_profile(g, &s)?;
            if slow != fast {
                return Err(OracleError::Disagreement {
                    profile: s,
                    decider: fast,
                    exhaustive: slow,
                });
            }
        }
        if fast {
            verdict.mbm = true;
            verdict.witness = Some(s);
            break;
        }
    }
    Ok(verdict)
}

pub fn oracle_is_mbm_graph(g: &Graph) -> Result<bool, OracleError> {
    decide_graph(g).map(|v| v.mbm)
}

/// All labeled graphs on `n` nodes in ascending edge-mask order.
pub fn enumerate_graphs(n: usize) -> Result<impl Iterator<Item = Graph>, OracleError> {
    guard(n, MAX_ENUM_N)?;
    Ok((0u64..1 << Graph::mask_width(n)).map(move |m| Graph::from_edge_mask(n, m).expect("n within mask width")))
}

/// A graph where the classifier and the oracle disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub edge_mask: u64,
    pub class: ForbiddenKind,
    pub oracle_mbm: bool,
    pub witness: Option<Profile>,
    pub detail: String,
}

/// Compares the classifier with the oracle on one graph. `Ok(None)` means they agree.
pub fn compare_graph(g: &Graph) -> Result<Option<Counterexample>, OracleError> {
    let class = classify_forbidden(g).kind;
    let verdict = decide_graph(g)?;
    if verdict.mbm == !class.is_forbidden() {
        return Ok(None);
    }
    Ok(Some(Counterexample {
        n: g.n(),
        edge_mask: g.edge_mask().unwrap_or(0),
        class,
        oracle_mbm: verdict.mbm,
        detail: if verdict.mbm {
            format!("classified {class} but a winning minority profile exists")
        } else {
            format!("classified {class} but no minority profile wins")
        },
        witness: verdict.witness,
    }))
}
