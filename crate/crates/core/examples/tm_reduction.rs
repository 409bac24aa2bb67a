//! Reduces a space-bounded DTM run to ptNFA universality and checks the
//! result against a direct simulation.
//!
//!     cargo run --release --example tm_reduction [machine.tm] [input] [space]

use std::error::Error;

use poset_automata::tm::{encode_run, reduce, simulate_dtm, verify_reduction, Dtm};
use poset_automata::Caps;

fn main() -> Result<(), Box<dyn Error>> {
    let caps = Caps::default();
    let args: Vec<String> = std::env::args().skip(1).collect();
    let text = match args.first() {
        Some(path) => std::fs::read_to_string(path)?,
        None => include_str!("data/one_step.tm").to_string(),
    };
    let m = Dtm::parse(&text)?;
    let x = m.parse_input(args.get(1).map_or("1", String::as_str))?;
    let pval = args.get(2).map(|s| s.parse()).transpose()?.unwrap_or(1);

    let run = simulate_dtm(&m, &x, pval, caps.word_len)?;
    println!(
        "machine: {} after {} configurations",
        run.verdict,
        run.configs.len()
    );

    let art = reduce(&m, &x, pval, &caps)?;
    print!("{}", art.provenance());
    if let Ok(w) = encode_run(&m, &x, pval, art.n, &caps) {
        let second: Vec<String> = art
            .project_second(&w)
            .into_iter()
            .map(|s| m.render_sym(s))
            .collect();
        println!("run encoding: {}", second.join(""));
    }
    print!(
        "{}",
        verify_reduction(&art, &m, &x, 1000, 0, &caps)?.render()
    );
    Ok(())
}
