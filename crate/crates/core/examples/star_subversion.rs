//! A star whose center alone prefers 1. Depending on who moves first, either
//! the center gives in or every leaf switches to 1.

use mbm::dynamics::{run_to_stable, SchedulerPolicy};
use mbm::{is_mbm_profile, Graph, Profile};

fn main() {
    let g = Graph::star(4);
    let s0: Profile = "10000".parse().unwrap();

    for (name, policy) in [
        ("lowest id first", SchedulerPolicy::MinIndex),
        ("leaves first", SchedulerPolicy::Scripted(vec![1, 2, 3, 4])),
    ] {
        let trace = run_to_stable(&g, &s0, &policy).unwrap();
        println!("{name:>16}: {} -> {} via {:?}", trace.start, trace.end, trace.nodes());
    }

    let decision = is_mbm_profile(&g, &s0).unwrap();
    println!("minority can win: {}", decision.mbm);
    println!("{}", serde_json::to_string_pretty(&decision.report()).unwrap());
}
