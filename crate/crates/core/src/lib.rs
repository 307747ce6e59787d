//! Mamdani-style fuzzy inference with a textual controller-definition
//! language, a smart-washing-machine reference controller, and a desk-scale
//! closed-loop wash-cycle simulator.
//!
//! The crate is layered bottom-up:
//!
//! - [`membership`], [`variable`], [`rule`], [`inference`], [`defuzz`]:
//!   the stateless numeric engine (fuzzification, min/max rule firing,
//!   clipping implication, max aggregation, centroid defuzzification).
//! - [`dsl`]: parse, validate, and serialize `.flc` controller documents.
//! - [`washing`]: the bundled two-input washing-machine controller plus
//!   sensor-reading scaling (pressure counts, opacity series).
//! - [`sim`]: a closed-loop wash-cycle simulation with first-order dirt
//!   release, sensor emulation, re-run/drain/refill logic, and resource
//!   accounting.
//!
//! All types are immutable after construction and every operation is a pure
//! function of its arguments, so values can be shared freely across threads.

pub mod defuzz;
pub mod dsl;
pub mod error;
pub mod inference;
pub mod membership;
pub mod rule;
pub mod sim;
pub mod variable;
pub mod washing;

pub use defuzz::{defuzzify_centroid, defuzzify_paper_range, DefuzzMode, TermRanges};
pub use error::FuzzyError;
pub use inference::{evaluate_rule, RuleBase, TermStrengths};
pub use membership::MembershipFunction;
pub use rule::{Clause, Connective, Rule};
pub use variable::{FuzzifiedInput, LinguisticVariable, Term, VarRole};
