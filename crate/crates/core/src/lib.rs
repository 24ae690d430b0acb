//! Minority-becomes-majority analysis for sequential majority dynamics on
//! undirected graphs.
//!
//! A node is unhappy when a strict majority of its neighbors prefer the other
//! value; an update flips one unhappy node. The crate classifies the graphs on
//! which a strict minority of ones can end as at least half of a stable
//! profile, builds such profiles with a short update prefix, decides single
//! profiles in polynomial time, cross-checks everything against exhaustive
//! search on small graphs, and compiles formulas into hardness instances.

pub mod bisection;
pub mod classifier;
pub mod cli;
pub mod constructor;
pub mod decider;
pub mod dynamics;
pub mod format;
pub mod graph;
pub mod oracle;
pub mod reduction;

pub use classifier::{classify_forbidden, ForbiddenKind};
pub use constructor::{construct_mbm, validate_certificate, MbmCertificate};
pub use decider::{is_mbm_profile, max_ones_stable, two_phase};
pub use graph::{Graph, Profile};
