//! Sorts a handful of small graphs into the forbidden classes.

use mbm::classifier::ClassificationReport;
use mbm::Graph;

fn k5_plus_pendant_pair() -> Graph {
    let mut edges: Vec<_> = Graph::mask_pairs(5).collect();
    edges.extend([(0, 5), (1, 5)]);
    Graph::from_edges(6, &edges).unwrap()
}

fn main() {
    let graphs = [
        ("empty on 4", Graph::empty(4)),
        ("K5", Graph::complete(5)),
        ("C4", Graph::cycle(4)),
        ("K5 + node on two", k5_plus_pendant_pair()),
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("star on 6", Graph::star(5)),
        ("C6", Graph::cycle(6)),
    ];
    println!("{:<18} {:<14} {:<9} extremal", "graph", "class", "witness");
    for (name, g) in graphs {
        let r = ClassificationReport::of(&g);
        let extremal = match r.extremal {
            Some(e) => e.to_string(),
            None => "-".into(),
        };
        let witness = r.witness.map_or("-".to_string(), |w| w.to_string());
        println!("{name:<18} {:<14} {witness:<9} {extremal}", r.class.to_string());
    }
}
