//! Checks the forbidden-class characterization against exhaustive search on
//! every labeled graph of a given order (default 5, at most 7).
//!
//! `cargo run --release --example oracle_sweep -- 6`

use std::collections::BTreeMap;

use mbm::classify_forbidden;
use mbm::oracle::{compare_graph, enumerate_graphs};

fn main() {
    let n: usize = std::env::args().nth(1).map_or(5, |a| a.parse().expect("order"));
    let mut per_class = BTreeMap::new();
    let mut checked = 0;
    let mut mismatches = 0;
    for g in enumerate_graphs(n).expect("order within the enumeration limit") {
        checked += 1;
        *per_class.entry(classify_forbidden(&g).kind.to_string()).or_insert(0) += 1;
        if let Some(c) = compare_graph(&g).unwrap() {
            mismatches += 1;
            println!("counterexample: {}", serde_json::to_string(&c).unwrap());
        }
    }
    println!("{checked} graphs checked, {mismatches} mismatches");
    for (class, count) in per_class {
        println!("  {class}: {count}");
    }
}
