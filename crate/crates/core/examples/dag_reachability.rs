//! Unary ptNFA universality as DAG reachability: random DAGs, their gadgets,
//! and a comparison against plain graph search.
//!
//!     cargo run --example dag_reachability [seed]

use std::error::Error;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use poset_automata::hardness::dag_gadget;
use poset_automata::random::random_dag;
use poset_automata::selftest::reachable;
use poset_automata::universality::universal_unary_po;

fn main() -> Result<(), Box<dyn Error>> {
    let seed = std::env::args()
        .nth(1)
        .map(|s| s.parse())
        .transpose()?
        .unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let g = random_dag(&mut rng, 6, 0.25);
        let a = dag_gadget(&g)?;
        let r = universal_unary_po(&a)?;
        assert_eq!(r.universal, reachable(&g, g.source(), g.target()));
        let verdict = match &r.counterexample {
            Some(w) => format!("unreachable, rejects a^{}", w.len()),
            None => "reachable, universal".to_string(),
        };
        println!(
            "{} edges, s = {}, t = {}: {verdict}",
            g.edges().len(),
            g.source(),
            g.target()
        );
    }
    Ok(())
}
