//! The words `W(k,n)`, the ptNFAs `A(k,n)` that reject exactly them, and the
//! trimmed rpoNFAs.
//!
//!     cargo run --example hard_words [k] [n]

use std::error::Error;

use poset_automata::classify::classify;
use poset_automata::hardness::{build_aknn, trim_aknn, w_word, w_word_len};
use poset_automata::universality::universal;
use poset_automata::Caps;

fn main() -> Result<(), Box<dyn Error>> {
    let caps = Caps::default();
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>());
    let k = args.next().transpose()?.unwrap_or(3);
    let n = args.next().transpose()?.unwrap_or(3);

    println!("|W(k,k)| grows like 4^k / sqrt(k):");
    for j in [1u64, 2, 4, 8, 16, 32] {
        println!("  k = {j:>2}: {}", w_word_len(j, j));
    }

    let a = build_aknn(k, n, &caps)?;
    let w = w_word(k, n, &caps)?;
    println!("W({k},{n}) = {}", a.alphabet().render(&w));
    println!(
        "A({k},{n}): {} states, class {}",
        a.num_states(),
        classify(&a).label
    );
    let r = universal(&a, &caps)?;
    assert_eq!(r.counterexample.as_ref(), Some(&w));
    println!(
        "  shortest rejected word is W({k},{n}), {} letters",
        w.len()
    );

    let t = trim_aknn(&a, k, n)?;
    let r = universal(&t, &caps)?;
    assert_eq!(r.counterexample.as_ref(), Some(&w));
    println!(
        "trimmed: {} states, class {}, still rejects W({k},{n})",
        t.num_states(),
        classify(&t).label
    );
    Ok(())
}
