//! Computations in the reduced 2-braid group of the torus
//! `<m, l, s | msms, lsls, l^-1 m l m^-1 s^-2>`: word equality with
//! replayable certificates, torus words, (1,1)-words and their length, and
//! the braid descriptions of (1,1)-positions of 2-bridge knots.
//!
//! Searches are budgeted and deterministic. With the `parallel` feature
//! (default) frontier expansion can use a rayon pool when more than one
//! worker is requested; results do not depend on the worker count.

pub mod equiv;
pub mod error;
pub mod moves;
pub mod one_one;
pub mod rules;
pub(crate) mod search;
pub mod torus;
pub mod two_bridge;
pub mod word;

pub use equiv::{equivalent, Budget, EquivalenceVerdict};
pub use error::{BudgetError, CfError, OneOneError, ParseError, TorusError};
pub use moves::{replay, replay_one_one, Certificate, Move};
pub use one_one::{
    is_torus_position, one_one_equivalent, one_one_length_upper, parse_one_one, reduce_11,
    LengthReport, LowerStatus, OneOneWord,
};
pub use rules::{parity, rule_catalog, ParityTriple, RewriteRule, RuleId};
pub use search::SearchStats;
pub use torus::{directed_path, recognize_torus_word, torus_word, LatticePath, TorusType};
pub use two_bridge::{
    cf_value, conway_params, flip_params, level_bound_rho1, level_bound_rho2, optimize_expansion,
    rho1_word, rho2_word, validate_expansion, CFExpansion, CfForm, OptimizeCaps, Position,
    Rational,
};
pub use word::{parse_word, BraidWord, Generator, Letter, Syllable};
