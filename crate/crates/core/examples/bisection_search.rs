//! Local search to a strongly locally minimal bisection and the special
//! structure found there.

use mbm::bisection::{strongly_minimal_search, BisectionReport};
use mbm::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [8, 12, 20] {
        let g = Graph::random_gnp(n, 0.4, &mut rng);
        match strongly_minimal_search(&g) {
            Ok(outcome) => {
                let report = BisectionReport::of(&g, &outcome.bisection);
                println!(
                    "n={n:<3} width {:<3} class {:?} after {} iterations",
                    report.width, report.class, outcome.iterations
                );
                println!("      side S {:?}", report.side_s);
                println!("      deficiencies {:?}", report.deficiencies);
                for w in &report.witnesses {
                    println!("      witness {}", serde_json::to_string(w).unwrap());
                }
            }
            Err(e) => println!("n={n:<3} {e}"),
        }
    }
}
