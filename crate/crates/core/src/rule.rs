//! IF/THEN rules over linguistic variables.

use crate::error::FuzzyError;

/// How a rule's antecedent clauses combine: AND takes the minimum degree,
/// OR the maximum. One connective applies uniformly across a rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    And,
    Or,
}

/// One `variable IS term` clause.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    pub variable: String,
    pub term: String,
}

impl Clause {
    pub fn new(variable: impl Into<String>, term: impl Into<String>) -> Self {
        Clause {
            variable: variable.into(),
            term: term.into(),
        }
    }
}

/// An IF/THEN rule: non-empty antecedents joined by one connective, and a
/// single consequent clause on the output variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub antecedents: Vec<Clause>,
    pub connective: Connective,
    pub consequent: Clause,
}

impl Rule {
    /// Single-antecedent rules are normalized to AND; the connective is
    /// irrelevant for one clause and normalizing keeps serialization and
    /// structural equality stable.
    pub fn new(
        antecedents: Vec<Clause>,
        connective: Connective,
        consequent: Clause,
    ) -> Result<Self, FuzzyError> {
        if antecedents.is_empty() {
            return Err(FuzzyError::Config(
                "a rule needs at least one antecedent".into(),
            ));
        }
        let connective = if antecedents.len() == 1 {
            Connective::And
        } else {
            connective
        };
        Ok(Rule {
            antecedents,
            connective,
            consequent,
        })
    }
}
