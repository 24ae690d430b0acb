//! Compiles a small formula into a hardness instance and checks that proper
//! profiles reach half the nodes exactly for satisfying assignments.

use mbm::reduction::{build_reduction, parse_cnf, EXAMPLE_CNF};
use num_rational::Ratio;

fn main() {
    let phi = parse_cnf(EXAMPLE_CNF).unwrap();
    let inst = build_reduction(&phi, Ratio::new(1, 16), None).unwrap();
    println!(
        "{} variables, {} clauses, clique {}: {} nodes, {} edges",
        phi.num_vars(),
        phi.num_clauses(),
        inst.params.clique_size,
        inst.n(),
        inst.graph.edge_count()
    );
    println!(
        "proper profiles hold {} ones, below the bound {}",
        inst.proper_ones(),
        inst.minority_bound()
    );
    let w0 = inst.variable(0).w(0);
    println!("node {w0} is {} with degree {}", inst.labels[w0], inst.graph.degree(w0));
    println!("{}", inst.correspondence_report().unwrap());
}
