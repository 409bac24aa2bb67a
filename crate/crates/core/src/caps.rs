//! Resource caps for the operations whose cost is exponential by nature.
//!
//! Defaults can be overridden through the `POSET_AUTOMATA_CAPS` environment
//! variable, a comma-separated list of `key=value` pairs, e.g.
//! `POSET_AUTOMATA_CAPS=antichain=5000000,determinize=65536`.

use crate::error::{Error, Result};

pub const CAPS_ENV_VAR: &str = "POSET_AUTOMATA_CAPS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Caps {
    /// Maximum number of subset states materialized by determinization.
    pub determinize: u64,
    /// Maximum number of nodes the antichain / subset deciders may explore.
    pub antichain: u64,
    /// Maximum word length accepted by bounded enumeration.
    pub enumerate_len: u64,
    /// Maximum number of words bounded enumeration may return or visit.
    pub enumerate_words: u64,
    /// Maximum length of a generated `W(k,n)` word.
    pub word_len: u64,
    /// Maximum value of `k` and of `n` for `A(k,n)` generators.
    pub aknn: u64,
    /// Maximum `n` the Turing machine reduction may select.
    pub reduce_n: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            determinize: 1 << 20,
            antichain: 1_000_000,
            enumerate_len: 64,
            enumerate_words: 1_000_000,
            word_len: 10_000_000,
            aknn: 64,
            reduce_n: 6,
        }
    }
}

impl Caps {
    /// Parses a `key=value,...` override list on top of the defaults.
    pub fn parse_overrides(spec: &str) -> Result<Caps> {
        let mut caps = Caps::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::input(format!("cap override `{item}` is not key=value")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::input(format!("cap `{key}` has a non-integer value")))?;
            let slot = match key.trim() {
                "determinize" => &mut caps.determinize,
                "antichain" => &mut caps.antichain,
                "enumerate_len" => &mut caps.enumerate_len,
                "enumerate_words" => &mut caps.enumerate_words,
                "word_len" => &mut caps.word_len,
                "aknn" => &mut caps.aknn,
                "reduce_n" => &mut caps.reduce_n,
                other => return Err(Error::input(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        Ok(caps)
    }

    /// Defaults with `POSET_AUTOMATA_CAPS` applied, if set.
    pub fn from_env() -> Result<Caps> {
        match std::env::var(CAPS_ENV_VAR) {
            Ok(spec) => Caps::parse_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }
}
