//! Algorithms for one-dimensional symbolic dynamics: subshift languages,
//! growth and entropy, sliding block codes and their inverses, empirical
//! measures with pushforward certificates, and finite partial-map checks
//! that witness sofic-style structure on a window.
//!
//! Words are anchored on the integer line, counts and measures are exact
//! (`BigUint` / `BigRational`), and every report type carries the data a
//! caller needs to re-verify the claim it makes.

pub mod alphabet;
pub mod block_code;
pub mod error;
pub mod format;
pub mod growth;
pub mod language;
pub mod measure;
pub mod sofic;
pub mod spec;
pub mod word;

pub use alphabet::Alphabet;
pub use block_code::{
    certify, check_endomorphism, derive_inverse_candidate, find_inverse, find_separating_window,
    induced_word_map, search_automorphisms, verify_inverse, BlockCode, CertifiedCode, EndoVerdict,
};
pub use error::{Error, Result};
pub use growth::{
    entropy_estimate, find_flat_windows, growth_function, window_defect, EntropyEstimate,
    FlatWindowReport, GrowthTable, Margin,
};
pub use language::{language_count, language_words, rule_space_size, WordSet, ENUMERATION_LIMIT};
pub use measure::{
    characteristic_defect, empirical_measure, frequency_comparison, pushforward, representatives,
    substitution_frequency_oracle, tv_distance, DefectEntry, DefectReport, EmpiricalMeasure,
    FreqComparison, RepresentativeSet,
};
pub use sofic::{
    build_partial_map, check_sofic_conditions, recurrence_check, window_surplus,
    CompositionTriple, FixedPointCheck, PartialMapTable, SoficCodeReport, SoficReport,
};
pub use spec::SubshiftSpec;
pub use word::Word;
