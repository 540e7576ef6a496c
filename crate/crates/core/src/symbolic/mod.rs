//! One-dimensional shift spaces and sliding block codes: presentations,
//! language comparison, and exact surjectivity / pre-injectivity deciders.

mod automata;
mod census;
mod code;
mod even;
mod pairs;
mod presentation;

pub use automata::{
    image_presentation, language_difference, language_equal, language_inclusion_gap, orphan_word, preserves,
    surjective_on, surjective_on_full_shift, SUBSET_LIMIT,
};
pub use census::{census_csv, elementary_census, CensusRow};
pub use code::{apply_code, SlidingBlockCode};
pub use even::{
    check_preimage_bounds, even_shift, even_shift_system, golden_mean_shift, moore_counterexample_search,
    replay_moore_witness, EvenShiftSystem, MooreWitness, PreimageBounds, CANDIDATE_LIMIT, PREIMAGE_CHECK_LEN,
};
pub use pairs::{pre_injective_code, PreInjectivity};
pub use presentation::{
    irreducibility_and_mixing, language_words, periodic_point_count, sft_from_allowed_words, Edge, MixingReport,
    SoficPresentation,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("the presented shift is empty")]
    EmptyShift,
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("invalid code: {0}")]
    InvalidCode(String),
    #[error("word of length {len} is shorter than the window {needed}")]
    WordTooShort { len: usize, needed: usize },
    #[error("alphabet mismatch: code reads {expected} symbols, shift uses {found}")]
    AlphabetMismatch { expected: usize, found: usize },
    #[error("code does not map the shift into itself (image word {0:?})")]
    NotPreserved(Vec<usize>),
    #[error("determinization exceeded {limit} subset states")]
    SubsetLimit { limit: usize },
    #[error("radius {radius} has {windows} windows; too many rule tables to enumerate")]
    CandidateLimit { radius: usize, windows: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal cross-check failed: {0}")]
    Inconsistent(String),
}

impl SymbolicError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, SymbolicError::SubsetLimit { .. } | SymbolicError::CandidateLimit { .. })
    }
}
