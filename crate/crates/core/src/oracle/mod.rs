//! Ground truth by exhaustion: isomorph-free enumeration, exact extremal
//! values over all small graphs, and the structured family search used at
//! orders far beyond enumeration.

mod enumerate;
mod family;
mod search;

pub use enumerate::{children, enumerate_filtered, enumerate_graphs, Keep, DEFAULT_MAX_N, MAX_N_ENV};
pub use family::{
    balanced_part_vectors, family_search, g0_candidates, verify_main_theorem, FamilyReport, FamilyWinner, TheoremCheck,
    DEFAULT_MAX_IMBALANCE,
};
pub use search::{
    brute_force_extremal, brute_force_f, BestValue, ExtremalReport, MatchingDegreeReport, Mode, SearchOptions,
    LAMBDA_TIE,
};
