//! Decides individual minority profiles and prints the subverting sequence
//! when there is one.

use mbm::{is_mbm_profile, Graph, Profile};

fn main() {
    let cases = [
        ("star on 5", Graph::star(4), "10000"),
        ("C4", Graph::cycle(4), "1000"),
        ("P4", Graph::path(4), "0100"),
        ("P4", Graph::path(4), "1000"),
        ("C6", Graph::cycle(6), "101000"),
    ];
    for (name, g, s) in cases {
        let s0: Profile = s.parse().unwrap();
        let d = is_mbm_profile(&g, &s0).unwrap();
        let verdict = if d.mbm { "wins" } else { "loses" };
        println!(
            "{name:<9} {s0} {verdict:<5} ends {} after {:?}",
            d.trace.end,
            d.trace.nodes()
        );
    }
    match is_mbm_profile(&Graph::path(4), &"1100".parse().unwrap()) {
        Ok(_) => unreachable!(),
        Err(e) => println!("P4 1100: {e}"),
    }
}
