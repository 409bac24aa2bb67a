//! Partially ordered NFAs: structural classes, universality deciders and the
//! hard instances behind their lower bounds.

pub mod caps;
pub mod classify;
pub mod cli;
pub mod dfa;
pub mod enumerate;
pub mod error;
pub mod hardness;
pub mod nfa;
pub mod ops;
pub mod random;
pub mod selftest;
pub mod text;
pub mod tm;
pub mod universality;

pub use caps::Caps;
pub use error::{Error, Result};
pub use nfa::{Alphabet, Letter, Nfa, NfaBuilder, StateId, StateSet, Word};
