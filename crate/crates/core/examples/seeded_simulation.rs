//! Random update orders from a certificate's post-prefix profile: the ones
//! hold and every order ends with at least half the nodes at 1.

use mbm::constructor::{construct_mbm, required_ones};
use mbm::dynamics::{run_to_stable, SchedulerPolicy};
use mbm::Graph;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let g = Graph::random_gnp(41, 0.3, &mut rng);
    let cert = construct_mbm(&g).unwrap();
    println!(
        "n={} route {:?}: {} ones, prefix {:?} -> {} ones",
        g.n(),
        cert.route,
        cert.s0.ones_count(),
        cert.prefix,
        cert.post_prefix.ones_count()
    );
    for seed in 0..8 {
        let trace = run_to_stable(&g, &cert.post_prefix, &SchedulerPolicy::SeededRandom(seed)).unwrap();
        let held = trace.steps.iter().all(|s| !cert.post_prefix.get(s.node));
        assert_eq!(trace.replay(&g).unwrap(), trace.end);
        println!(
            "seed {seed}: {:>3} steps starting {:?}, {} ones at the end (need {}), supporters held: {held}",
            trace.len(),
            &trace.nodes()[..trace.len().min(4)],
            trace.end.ones_count(),
            required_ones(g.n())
        );
    }
}
