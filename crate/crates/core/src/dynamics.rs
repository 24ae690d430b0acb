//! Sequential majority dynamics.
//!
//! An agent is unhappy when strictly more than half of its neighbors hold the
//! opposite preference; ties keep the current preference, so isolated nodes
//! never move. An update flips one unhappy agent.

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Profile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("node {node} is not unhappy{}", position.map(|p| format!(" at schedule position {p}")).unwrap_or_default())]
    UpdateNotLegal {
        node: usize,
        position: Option<usize>,
    },
    #[error("no stable profile within {budget} steps")]
    StepBudgetExceeded { budget: usize },
    #[error("node {node} is out of range for a graph on {n} nodes")]
    NodeOutOfRange { node: usize, n: usize },
    #[error("profile has length {got} but the graph has {expected} nodes")]
    ProfileLength { expected: usize, got: usize },
}

pub(crate) fn check_profile(g: &Graph, s: &Profile) -> Result<(), DynamicsError> {
    if s.len() != g.n() {
        return Err(DynamicsError::ProfileLength {
            expected: g.n(),
            got: s.len(),
        });
    }
    Ok(())
}

pub fn is_unhappy(g: &Graph, s: &Profile, v: usize) -> bool {
    let mine = s.get(v);
    let opposed = g.neighbors(v).iter().filter(|&&w| s.get(w) != mine).count();
    2 * opposed > g.degree(v)
}

pub fn unhappy_nodes<'a>(g: &'a Graph, s: &'a Profile) -> impl Iterator<Item = usize> + 'a {
    (0..g.n()).filter(move |&v| is_unhappy(g, s, v))
}

pub fn is_stable(g: &Graph, s: &Profile) -> bool {
    unhappy_nodes(g, s).next().is_none()
}

/// Flips `v`, which must be unhappy in `s`.
pub fn apply_update(g: &Graph, s: &Profile, v: usize) -> Result<Profile, DynamicsError> {
    if v >= g.n() {
        return Err(DynamicsError::NodeOutOfRange { node: v, n: g.n() });
    }
    if !is_unhappy(g, s, v) {
        return Err(DynamicsError::UpdateNotLegal {
            node: v,
            position: None,
        });
    }
    let mut next = s.clone();
    next.flip(v);
    Ok(next)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub node: usize,
    pub from: bool,
    pub to: bool,
}

/// A recorded run: the start profile, every flip in order, and the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateTrace {
    pub start: Profile,
    pub steps: Vec<Step>,
    pub end: Profile,
}

impl UpdateTrace {
    pub(crate) fn begin(start: Profile) -> Self {
        UpdateTrace {
            end: start.clone(),
            start,
            steps: Vec::new(),
        }
    }

    pub(crate) fn push_flip(&mut self, node: usize) {
        let from = self.end.get(node);
        self.end.flip(node);
        self.steps.push(Step {
            node,
            from,
            to: !from,
        });
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn nodes(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.node).collect()
    }

    /// Re-executes the steps from `start`, checking legality and that the
    /// recorded preferences and end profile agree.
    pub fn replay(&self, g: &Graph) -> Result<Profile, DynamicsError> {
        let mut s = self.start.clone();
        for (position, step) in self.steps.iter().enumerate() {
            if step.node >= g.n() || s.get(step.node) != step.from || step.from == step.to {
                return Err(DynamicsError::UpdateNotLegal {
                    node: step.node,
                    position: Some(position),
                });
            }
            s = apply_update(g, &s, step.node).map_err(|_| DynamicsError::UpdateNotLegal {
                node: step.node,
                position: Some(position),
            })?;
        }
        Ok(s)
    }

    pub fn report(&self) -> TraceReport {
        TraceReport {
            start: self.start.to_string(),
            steps: self
                .steps
                .iter()
                .enumerate()
                .map(|(step, s)| StepRecord {
                    step,
                    node: s.node,
                    from: s.from as u8,
                    to: s.to as u8,
                })
                .collect(),
            end: self.end.to_string(),
            ones_before: self.start.ones_count(),
            ones_after: self.end.ones_count(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub step: usize,
    pub node: usize,
    pub from: u8,
    pub to: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub start: String,
    pub steps: Vec<StepRecord>,
    pub end: String,
    pub ones_before: usize,
    pub ones_after: usize,
}

/// Applies `schedule` in order; every scheduled node must be unhappy at its turn.
pub fn run_schedule(g: &Graph, s0: &Profile, schedule: &[usize]) -> Result<UpdateTrace, DynamicsError> {
    check_profile(g, s0)?;
    let mut trace = UpdateTrace::begin(s0.clone());
    for (position, &v) in schedule.iter().enumerate() {
        if v >= g.n() || !is_unhappy(g, &trace.end, v) {
            return Err(DynamicsError::UpdateNotLegal {
                node: v,
                position: Some(position),
            });
        }
        trace.push_flip(v);
    }
    Ok(trace)
}

/// SplitMix64 (Steele, Lea and Flood), used for reproducible random schedules.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Index in `0..len` as `next_u64() % len`.
    pub fn next_index(&mut self, len: usize) -> usize {
        (self.next_u64() % len as u64) as usize
    }
}

/// How `run_to_stable` picks the next unhappy agent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchedulerPolicy {
    /// Lowest-id unhappy node.
    MinIndex,
    /// The unhappy nodes are listed ascending and one is drawn with
    /// [`SplitMix64::next_index`].
    SeededRandom(u64),
    /// The listed nodes in order (each must be unhappy at its turn), then
    /// `MinIndex` until stable.
    Scripted(Vec<usize>),
}

pub fn default_step_budget(n: usize) -> usize {
    4 * n * n
}

pub fn run_to_stable(g: &Graph, s0: &Profile, policy: &SchedulerPolicy) -> Result<UpdateTrace, DynamicsError> {
    run_to_stable_with_budget(g, s0, policy, default_step_budget(g.n()))
}

pub fn run_to_stable_with_budget(
    g: &Graph,
    s0: &Profile,
    policy: &SchedulerPolicy,
    budget: usize,
) -> Result<UpdateTrace, DynamicsError> {
    check_profile(g, s0)?;
    let mut trace = match policy {
        SchedulerPolicy::Scripted(script) => {
            if let Some(&node) = script.iter().find(|&&v| v >= g.n()) {
                return Err(DynamicsError::NodeOutOfRange { node, n: g.n() });
            }
            if script.len() > budget {
                return Err(DynamicsError::StepBudgetExceeded { budget });
            }
            run_schedule(g, s0, script)?
        }
        _ => UpdateTrace::begin(s0.clone()),
    };
    let mut rng = match policy {
        SchedulerPolicy::SeededRandom(seed) => Some(SplitMix64::new(*seed)),
        _ => None,
    };
    let mut unhappy = Vec::new();
    loop {
        unhappy.clear();
        unhappy.extend(unhappy_nodes(g, &trace.end));
        if unhappy.is_empty() {
            return Ok(trace);
        }
        if trace.len() >= budget {
            return Err(DynamicsError::StepBudgetExceeded { budget });
        }
        let pick = match rng.as_mut() {
            Some(rng) => unhappy[rng.next_index(unhappy.len())],
            None => unhappy[0],
        };
        trace.push_flip(pick);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Profile {
        s.parse().unwrap()
    }

    #[test]
    fn unhappy_examples() {
        assert!(is_unhappy(&Graph::path(3), &p("101"), 1));
        assert!(!is_unhappy(&Graph::cycle(4), &p("1000"), 1));
        let empty = Graph::empty(3);
        for v in 0..3 {
            assert!(!is_unhappy(&empty, &p("101"), v));
        }
    }

    #[test]
    fn apply_update_examples() {
        assert_eq!(apply_update(&Graph::path(3), &p("101"), 1), Ok(p("111")));
        assert_eq!(apply_update(&Graph::star(4), &p("10000"), 1), Ok(p("11000")));
        assert_eq!(
            apply_update(&Graph::cycle(4), &p("1000"), 1),
            Err(DynamicsError::UpdateNotLegal { node: 1, position: None })
        );
    }

    #[test]
    fn stability_examples() {
        assert!(is_stable(&Graph::path(3), &p("111")));
        assert!(!is_stable(&Graph::path(3), &p("101")));
        assert!(is_stable(&Graph::cycle(4), &p("1100")));
    }

    #[test]
    fn schedule_examples() {
        let t = run_schedule(&Graph::star(4), &p("10000"), &[1, 2, 3, 4]).unwrap();
        assert_eq!(t.end, p("11111"));
        let t = run_schedule(&Graph::path(3), &p("010"), &[0]).unwrap();
        assert_eq!(t.end, p("110"));
        assert_eq!(
            run_schedule(&Graph::path(3), &p("000"), &[1]),
            Err(DynamicsError::UpdateNotLegal { node: 1, position: Some(0) })
        );
    }

    #[test]
    fn run_to_stable_examples() {
        // The center is the lowest unhappy id and flips first.
        let t = run_to_stable(&Graph::star(4), &p("10000"), &SchedulerPolicy::MinIndex).unwrap();
        assert_eq!(t.end, p("00000"));
        assert_eq!(t.nodes(), vec![0]);
        let t = run_to_stable(&Graph::star(4), &p("10000"), &SchedulerPolicy::Scripted(vec![1, 2, 3, 4])).unwrap();
        assert_eq!(t.end, p("11111"));
        assert_eq!(t.len(), 4);

        let t = run_to_stable(&Graph::cycle(4), &p("1100"), &SchedulerPolicy::MinIndex).unwrap();
        assert!(t.is_empty());
        assert_eq!(t.end, p("1100"));

        let t = run_to_stable(&Graph::cycle(4), &p("1000"), &SchedulerPolicy::MinIndex).unwrap();
        assert_eq!(t.end, p("0000"));
        assert_eq!(t.nodes(), vec![0]);
    }

    #[test]
    fn budget_and_script_errors() {
        assert_eq!(
            run_to_stable_with_budget(&Graph::path(5), &p("10101"), &SchedulerPolicy::MinIndex, 1),
            Err(DynamicsError::StepBudgetExceeded { budget: 1 })
        );
        assert_eq!(
            run_to_stable(&Graph::star(4), &p("10000"), &SchedulerPolicy::Scripted(vec![9])),
            Err(DynamicsError::NodeOutOfRange { node: 9, n: 5 })
        );
        let t = run_to_stable(&Graph::star(4), &p("10000"), &SchedulerPolicy::Scripted(vec![3])).unwrap();
        assert_eq!(t.nodes(), vec![3, 0, 3]);
        assert_eq!(
            run_schedule(&Graph::path(3), &p("01"), &[]),
            Err(DynamicsError::ProfileLength { expected: 3, got: 2 })
        );
    }

    #[test]
    fn splitmix_reference_values() {
        // Reference outputs of SplitMix64 seeded with 0.
        let mut rng = SplitMix64::new(0);
        assert_eq!(rng.next_u64(), 0xe220_a839_7b1d_cdaf);
        assert_eq!(rng.next_u64(), 0x6e78_9e6a_a1b9_65f4);
    }

    #[test]
    fn seeded_runs_reproduce() {
        let g = Graph::cycle(9);
        let s = p("101100110");
        let a = run_to_stable(&g, &s, &SchedulerPolicy::SeededRandom(7)).unwrap();
        let b = run_to_stable(&g, &s, &SchedulerPolicy::SeededRandom(7)).unwrap();
        assert_eq!(a, b);
        assert!(is_stable(&g, &a.end));
        assert_eq!(a.replay(&g), Ok(a.end.clone()));
    }

    #[test]
    fn trace_report_fields() {
        let t = run_schedule(&Graph::path(3), &p("010"), &[0]).unwrap();
        let r = t.report();
        assert_eq!(r.start, "010");
        assert_eq!(r.end, "110");
        assert_eq!(r.steps, vec![StepRecord { step: 0, node: 0, from: 0, to: 1 }]);
        assert_eq!((r.ones_before, r.ones_after), (1, 2));
    }

    fn graph_and_profile() -> impl Strategy<Value = (Graph, Profile, u64)> {
        (2usize..10).prop_flat_map(|n| {
            let w = Graph::mask_width(n) as u32;
            (0u64..(1u64 << w), 0u64..(1u64 << n), any::<u64>()).prop_map(move |(m, s, seed)| {
                (Graph::from_edge_mask(n, m).unwrap(), Profile::from_mask(n, s), seed)
            })
        })
    }

    proptest! {
        #[test]
        fn flip_twice_restores((g, s, _) in graph_and_profile()) {
            for v in unhappy_nodes(&g, &s).collect::<Vec<_>>() {
                let once = apply_update(&g, &s, v).unwrap();
                if let Ok(twice) = apply_update(&g, &once, v) {
                    prop_assert_eq!(twice.get(v), s.get(v));
                }
            }
        }

        #[test]
        fn random_runs_end_stable_and_replay((g, s, seed) in graph_and_profile()) {
            let t = run_to_stable(&g, &s, &SchedulerPolicy::SeededRandom(seed)).unwrap();
            prop_assert!(is_stable(&g, &t.end));
            prop_assert_eq!(t.replay(&g).unwrap(), t.end.clone());
            let mut parity = vec![false; g.n()];
            for step in &t.steps {
                prop_assert_ne!(step.from, step.to);
                parity[step.node] ^= true;
            }
            prop_assert_eq!(t.start.hamming(&t.end), parity.iter().filter(|&&b| b).count());
        }

        #[test]
        fn supported_ones_never_drop((g, s, seed) in graph_and_profile()) {
            // If no 1-node is unhappy, only 0->1 flips are legal and the count never falls.
            let supported = s.ones().all(|v| !is_unhappy(&g, &s, v));
            prop_assume!(supported);
            let t = run_to_stable(&g, &s, &SchedulerPolicy::SeededRandom(seed)).unwrap();
            let mut cur = s.clone();
            for step in &t.steps {
                prop_assert!(!step.from && step.to);
                cur.flip(step.node);
                prop_assert!(cur.ones().all(|v| !is_unhappy(&g, &cur, v)));
            }
        }
    }
}
