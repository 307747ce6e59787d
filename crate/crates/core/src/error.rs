use thiserror::Error;

/// Errors surfaced by the engine, the bundled controller, and the simulator.
///
/// Everything except [`FuzzyError::NoRuleFired`] and [`FuzzyError::Input`] is
/// a configuration problem: the controller definition or the run parameters
/// are inconsistent, not the crisp inputs.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("invalid membership function: {0}")]
    Membership(String),

    #[error("invalid variable `{name}`: {reason}")]
    Variable { name: String, reason: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("unknown term `{term}` in variable `{variable}`")]
    UnknownTerm { variable: String, term: String },

    #[error("empty rule base")]
    EmptyRuleBase,

    /// No output term carries a positive firing strength, so there is
    /// nothing to defuzzify.
    #[error("no rule fired")]
    NoRuleFired,

    #[error("no output range declared for term `{0}`")]
    MissingRange(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("invalid input: {0}")]
    Input(String),
}
