//! Runs every applicable universality decider on the same inputs and shows
//! that they agree.
//!
//!     cargo run --example universality

use std::error::Error;

use poset_automata::hardness::{build_aknn, dag_gadget, Dag};
use poset_automata::universality::{universal, universal_with, Method, MethodChoice};
use poset_automata::{Caps, Nfa};

fn report(name: &str, a: &Nfa, methods: &[Method], caps: &Caps) -> Result<(), Box<dyn Error>> {
    let auto = universal(a, caps)?;
    println!("{name}: auto picks {}", auto.method);
    for &m in methods {
        let r = universal_with(a, MethodChoice::Fixed(m), None, caps)?;
        assert_eq!(r.universal, auto.universal);
        let verdict = match &r.counterexample {
            Some(w) => format!("rejects `{}`", a.alphabet().render(w)),
            None => "universal".to_string(),
        };
        println!("  {:<16} {verdict}", m.as_str());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    let caps = Caps::default();
    let general = [Method::Antichain, Method::Subset, Method::BruteForce];
    for (k, n) in [(2, 2), (3, 2), (2, 3)] {
        report(
            &format!("A({k},{n})"),
            &build_aknn(k, n, &caps)?,
            &general,
            &caps,
        )?;
    }
    let mut unary = vec![Method::UnaryPumping];
    unary.extend(general);
    let g = Dag::parse(include_str!("data/split.dag"))?;
    report("DAG gadget, t unreachable", &dag_gadget(&g)?, &unary, &caps)?;
    let g = Dag::parse(include_str!("data/diamond.dag"))?;
    report("DAG gadget, t reachable", &dag_gadget(&g)?, &unary, &caps)?;
    Ok(())
}
