//! Classifies a few hand-built automata and prints each report with its
//! witnesses.
//!
//!     cargo run --example classify [file.nfa]

use std::error::Error;

use poset_automata::classify::classify;
use poset_automata::hardness::build_aknn;
use poset_automata::text::parse_nfa;
use poset_automata::{Alphabet, Caps, Letter, Nfa};

fn two_dead_ends() -> Nfa {
    let mut b = Nfa::builder(Alphabet::new(["a", "b"]).unwrap());
    let q = b.add_state("q");
    let s = b.add_state("s");
    let t = b.add_state("t");
    b.transition(q, Letter(0), s)
        .transition(q, Letter(1), t)
        .initial(q)
        .accepting(s);
    b.build().unwrap()
}

fn main() -> Result<(), Box<dyn Error>> {
    let mut cases = vec![
        ("A(2,2)".to_string(), build_aknn(2, 2, &Caps::default())?),
        ("two dead ends".to_string(), two_dead_ends()),
        (
            "forbidden pattern".to_string(),
            parse_nfa(include_str!("data/forbidden.nfa"))?,
        ),
    ];
    if let Some(path) = std::env::args().nth(1) {
        cases.push((path.clone(), parse_nfa(&std::fs::read_to_string(&path)?)?));
    }
    for (name, a) in &cases {
        println!("== {name} ({} states)", a.num_states());
        print!("{}", classify(a).render(a));
    }
    Ok(())
}
