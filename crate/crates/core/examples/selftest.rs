//! The built-in randomized self-test, with a configurable seed and sample
//! count.
//!
//!     cargo run --release --example selftest [seed] [samples]

use std::error::Error;

use poset_automata::selftest::{run_selftest, SelftestConfig};
use poset_automata::Caps;

fn main() -> Result<(), Box<dyn Error>> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>());
    let mut config = SelftestConfig::default();
    if let Some(seed) = args.next().transpose()? {
        config.seed = seed;
    }
    if let Some(samples) = args.next().transpose()? {
        config.samples = samples as usize;
    }
    let report = run_selftest(&config, &Caps::from_env()?)?;
    print!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
    Ok(())
}
