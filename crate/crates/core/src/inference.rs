//! Rule firing and aggregation.
//!
//! Mamdani semantics throughout: AND is min, OR is max, each rule clips its
//! consequent term at the firing strength, and rules firing the same term
//! aggregate by max.

use crate::error::FuzzyError;
use crate::rule::{Connective, Rule};
use crate::variable::{FuzzifiedInput, LinguisticVariable};

/// Aggregated per-term firing strengths for the output variable.
///
/// Contains one entry per declared output term, in declaration order; terms
/// never fired carry strength `0`.
#[derive(Debug, Clone, PartialEq)]
pub struct TermStrengths {
    pub variable: String,
    pub strengths: Vec<(String, f64)>,
}

impl TermStrengths {
    /// Case-insensitive strength lookup.
    pub fn strength(&self, term: &str) -> Option<f64> {
        self.strengths
            .iter()
            .find(|(name, _)| name.eq_ignore_ascii_case(term))
            .map(|(_, s)| *s)
    }

    /// The term with maximal strength (first declared wins ties), or `None`
    /// for an empty term list.
    pub fn dominant(&self) -> Option<(&str, f64)> {
        let mut best: Option<(&str, f64)> = None;
        for (name, s) in &self.strengths {
            if best.is_none_or(|(_, bs)| *s > bs) {
                best = Some((name, *s));
            }
        }
        best
    }

    pub fn all_zero(&self) -> bool {
        self.strengths.iter().all(|(_, s)| *s == 0.0)
    }
}

/// Firing strength of one rule against fuzzified inputs: min of antecedent
/// degrees under AND, max under OR.
///
/// Unresolved variable or term names are configuration errors.
pub fn evaluate_rule(rule: &Rule, inputs: &[FuzzifiedInput]) -> Result<f64, FuzzyError> {
    let mut strength: Option<f64> = None;
    for clause in &rule.antecedents {
        let input = inputs
            .iter()
            .find(|f| f.variable.eq_ignore_ascii_case(&clause.variable))
            .ok_or_else(|| FuzzyError::UnknownVariable(clause.variable.clone()))?;
        let degree = input
            .degree(&clause.term)
            .ok_or_else(|| FuzzyError::UnknownTerm {
                variable: clause.variable.clone(),
                term: clause.term.clone(),
            })?;
        strength = Some(match (strength, rule.connective) {
            (None, _) => degree,
            (Some(s), Connective::And) => s.min(degree),
            (Some(s), Connective::Or) => s.max(degree),
        });
    }
    // Rule::new guarantees at least one antecedent.
    Ok(strength.expect("rule has at least one antecedent"))
}

/// An ordered rule list bound to the output variable it fires into.
#[derive(Debug, Clone, Copy)]
pub struct RuleBase<'a> {
    pub output: &'a LinguisticVariable,
    pub rules: &'a [Rule],
}

impl<'a> RuleBase<'a> {
    pub fn new(output: &'a LinguisticVariable, rules: &'a [Rule]) -> Self {
        RuleBase { output, rules }
    }

    /// Fires every rule and aggregates per-consequent-term strengths by max.
    pub fn infer(&self, inputs: &[FuzzifiedInput]) -> Result<TermStrengths, FuzzyError> {
        if self.rules.is_empty() {
            return Err(FuzzyError::EmptyRuleBase);
        }
        let mut strengths: Vec<(String, f64)> = self
            .output
            .terms()
            .iter()
            .map(|t| (t.name.clone(), 0.0))
            .collect();
        for rule in self.rules {
            let strength = evaluate_rule(rule, inputs)?;
            let slot = strengths
                .iter_mut()
                .find(|(name, _)| name.eq_ignore_ascii_case(&rule.consequent.term))
                .ok_or_else(|| FuzzyError::UnknownTerm {
                    variable: rule.consequent.variable.clone(),
                    term: rule.consequent.term.clone(),
                })?;
            if strength > slot.1 {
                slot.1 = strength;
            }
        }
        Ok(TermStrengths {
            variable: self.output.name().to_string(),
            strengths,
        })
    }
}
