//! Space-bounded deterministic Turing machines and their reduction to
//! ptNFA universality.

pub mod dtm;
pub mod reduction;

pub use dtm::{simulate_dtm, Config, Dtm, DtmRun, Move, RunVerdict, Sym};
pub use reduction::{
    encode_run, reduce, reduce_with, verify_reduction, ReductionArtifact, ReductionOptions,
    Verification, VerificationMode,
};
