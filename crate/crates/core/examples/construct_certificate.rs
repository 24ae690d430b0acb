//! Builds a winning minority profile for several graphs and checks it.
//!
//! Pass a path to write a DOT rendering of the last certificate:
//! `cargo run --example construct_certificate -- out.dot`

use mbm::constructor::{construct_mbm, validate_certificate};
use mbm::format::to_dot;
use mbm::{is_mbm_profile, Graph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let graphs = [
        ("P3", Graph::path(3)),
        ("P4", Graph::path(4)),
        ("star on 5", Graph::star(4)),
        ("C4", Graph::cycle(4)),
        ("G(40, 0.3)", Graph::random_gnp(40, 0.3, &mut rng)),
        ("G(41, 0.7)", Graph::random_gnp(41, 0.7, &mut rng)),
    ];
    let mut last = None;
    for (name, g) in graphs {
        match construct_mbm(&g) {
            Ok(cert) => {
                validate_certificate(&g, &cert).expect("constructed certificates validate");
                let wins = is_mbm_profile(&g, &cert.s0).unwrap().mbm;
                println!(
                    "{name:<11} route {:<8} ones {:>2}/{:<2} prefix {:?} decider agrees: {wins}",
                    format!("{:?}", cert.route),
                    cert.s0.ones_count(),
                    g.n(),
                    cert.prefix
                );
                last = Some((g, cert));
            }
            Err(e) => println!("{name:<11} {e}"),
        }
    }
    if let (Some(path), Some((g, cert))) = (std::env::args().nth(1), last) {
        std::fs::write(&path, to_dot(&g, Some(&cert.s0))).unwrap();
        println!("wrote {path}");
    }
}
