//! Two-phase procedure: flip unhappy 0-nodes until none remain, then unhappy
//! 1-nodes until none remain. The result is the reachable stable profile with
//! the most ones, which decides whether a profile lets the minority win.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{check_profile, DynamicsError, TraceReport, UpdateTrace};
use crate::graph::{Graph, Profile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeciderError {
    #[error("profile has {ones} ones out of {n}; the ones must be a strict minority")]
    NotAMinority { ones: usize, n: usize },
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

fn unhappy_with(g: &Graph, bits: &[bool], ones_nb: &[usize], v: usize) -> bool {
    let deg = g.degree(v);
    let opposed = if bits[v] { deg - ones_nb[v] } else { ones_nb[v] };
    2 * opposed > deg
}

fn run_two_phase(g: &Graph, s0: &Profile, mut record: impl FnMut(usize)) -> Profile {
    let mut bits = s0.bits().to_vec();
    let mut ones_nb: Vec<usize> = (0..g.n())
        .map(|v| g.neighbors(v).iter().filter(|&&w| bits[w]).count())
        .collect();
    for phase_value in [false, true] {
        let mut queue: BTreeSet<usize> = (0..g.n())
            .filter(|&v| bits[v] == phase_value && unhappy_with(g, &bits, &ones_nb, v))
            .collect();
        while let Some(v) = queue.pop_first() {
            bits[v] = !phase_value;
            record(v);
            for &w in g.neighbors(v) {
                if phase_value {
                    ones_nb[w] -= 1;
                } else {
                    ones_nb[w] += 1;
                }
                if bits[w] == phase_value && unhappy_with(g, &bits, &ones_nb, w) {
                    queue.insert(w);
                }
            }
        }
    }
    Profile::new(bits)
}

/// Both phases, with unhappy nodes taken in ascending id within a phase.
pub fn two_phase(g: &Graph, s0: &Profile) -> Result<UpdateTrace, DeciderError> {
    check_profile(g, s0)?;
    let mut trace = UpdateTrace::begin(s0.clone());
    let end = run_two_phase(g, s0, |v| trace.push_flip(v));
    debug_assert_eq!(end, trace.end);
    Ok(trace)
}

/// Ones in the end profile of [`two_phase`].
pub fn max_ones_stable(g: &Graph, s0: &Profile) -> Result<usize, DeciderError> {
    check_profile(g, s0)?;
    Ok(run_two_phase(g, s0, |_| {}).ones_count())
}

/// True when a stable profile with at most `n/2` zeros is reachable.
pub fn is_minority_win(n: usize, final_ones: usize) -> bool {
    2 * (n - final_ones) <= n
}

pub(crate) fn check_minority(s0: &Profile) -> Result<(), DeciderError> {
    if 2 * s0.zeros_count() <= s0.len() {
        return Err(DeciderError::NotAMinority {
            ones: s0.ones_count(),
            n: s0.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbmDecision {
    pub mbm: bool,
    pub trace: UpdateTrace,
}

impl MbmDecision {
    pub fn report(&self) -> DecisionReport {
        DecisionReport {
            mbm: self.mbm,
            initial_ones: self.trace.start.ones_count(),
            final_ones: self.trace.end.ones_count(),
            trace: self.trace.report(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecisionReport {
    pub mbm: bool,
    pub initial_ones: usize,
    pub final_ones: usize,
    pub trace: TraceReport,
}

/// Decides whether `s0`, whose ones must be a strict minority, can end in a
/// stable profile with at most `n/2` zeros. The two-phase trace is the
/// subverting sequence when the answer is yes.
pub fn is_mbm_profile(g: &Graph, s0: &Profile) -> Result<MbmDecision, DeciderError> {
    check_profile(g, s0)?;
    check_minority(s0)?;
    let trace = two_phase(g, s0)?;
    Ok(MbmDecision {
        mbm: is_minority_win(g.n(), trace.end.ones_count()),
        trace,
    })
}
