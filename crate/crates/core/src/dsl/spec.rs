//! The resolved controller definition and its evaluation pipeline.

use crate::defuzz::{self, DefuzzMode, TermRanges};
use crate::error::FuzzyError;
use crate::inference::{RuleBase, TermStrengths};
use crate::rule::Rule;
use crate::variable::{FuzzifiedInput, LinguisticVariable, VarRole};

/// A declared variable together with its term aliases.
///
/// Aliases let a document refer to a term under an alternative vocabulary
/// (e.g. `small` for `low`); rules are stored resolved to canonical names.
#[derive(Debug, Clone, PartialEq)]
pub struct VariableDecl {
    pub variable: LinguisticVariable,
    /// `(alias, canonical-term)` pairs in declaration order.
    pub aliases: Vec<(String, String)>,
}

impl VariableDecl {
    pub fn plain(variable: LinguisticVariable) -> Self {
        VariableDecl {
            variable,
            aliases: Vec::new(),
        }
    }

    /// Resolves a term or alias name to the canonical term name.
    pub fn resolve_term(&self, name: &str) -> Option<&str> {
        if let Some(term) = self.variable.term(name) {
            return Some(&term.name);
        }
        self.aliases
            .iter()
            .find(|(alias, _)| alias.eq_ignore_ascii_case(name))
            .map(|(_, target)| target.as_str())
    }
}

/// The physical output ranges block (`RANGES <var> ...`).
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRanges {
    pub variable: String,
    pub ranges: TermRanges,
}

/// 1-based source lines of the parsed constructs, used to anchor validator
/// diagnostics. Programmatic specs carry none and anchor at line 1.
#[derive(Debug, Clone, Default)]
pub struct SourceAnchors {
    pub controller_line: usize,
    pub variable_lines: Vec<usize>,
    pub rule_lines: Vec<usize>,
    pub ranges_line: usize,
}

impl SourceAnchors {
    pub fn variable_line(&self, index: usize) -> usize {
        self.variable_lines.get(index).copied().unwrap_or(1).max(1)
    }

    pub fn rule_line(&self, index: usize) -> usize {
        self.rule_lines.get(index).copied().unwrap_or(1).max(1)
    }
}

/// A fully resolved controller: ordered variables, ordered rules, and an
/// optional physical-range table for paper-mode defuzzification.
#[derive(Debug, Clone)]
pub struct ControllerSpec {
    pub name: String,
    pub variables: Vec<VariableDecl>,
    pub rules: Vec<Rule>,
    pub output_ranges: Option<OutputRanges>,
    pub anchors: Option<SourceAnchors>,
}

/// Structural equality ignores source anchors: a re-parsed serialization is
/// the same spec even though it came from different lines.
impl PartialEq for ControllerSpec {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.variables == other.variables
            && self.rules == other.rules
            && self.output_ranges == other.output_ranges
    }
}

/// Result of evaluating a controller at one crisp input point.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub value: f64,
    pub fired: TermStrengths,
    pub dominant_term: String,
}

impl ControllerSpec {
    pub fn new(
        name: impl Into<String>,
        variables: Vec<VariableDecl>,
        rules: Vec<Rule>,
        output_ranges: Option<OutputRanges>,
    ) -> Self {
        ControllerSpec {
            name: name.into(),
            variables,
            rules,
            output_ranges,
            anchors: None,
        }
    }

    pub fn variable(&self, name: &str) -> Option<&VariableDecl> {
        self.variables
            .iter()
            .find(|d| d.variable.name().eq_ignore_ascii_case(name))
    }

    pub fn input_variables(&self) -> impl Iterator<Item = &VariableDecl> {
        self.variables
            .iter()
            .filter(|d| d.variable.role() == VarRole::Input)
    }

    /// The single output variable; `None` if the spec declares none.
    pub fn output_variable(&self) -> Option<&LinguisticVariable> {
        self.variables
            .iter()
            .find(|d| d.variable.role() == VarRole::Output)
            .map(|d| &d.variable)
    }

    /// Fuzzifies one crisp assignment per input variable.
    ///
    /// Every declared input must be assigned exactly once; unknown names are
    /// rejected so typos do not silently fall back to defaults.
    pub fn fuzzify_inputs(
        &self,
        assignments: &[(String, f64)],
    ) -> Result<Vec<FuzzifiedInput>, FuzzyError> {
        for (name, _) in assignments {
            let known = self
                .input_variables()
                .any(|d| d.variable.name().eq_ignore_ascii_case(name));
            if !known {
                return Err(FuzzyError::UnknownVariable(name.clone()));
            }
        }
        let mut fuzzified = Vec::new();
        for decl in self.input_variables() {
            let var = &decl.variable;
            let mut values = assignments
                .iter()
                .filter(|(name, _)| var.name().eq_ignore_ascii_case(name))
                .map(|(_, x)| *x);
            let x = values.next().ok_or_else(|| {
                FuzzyError::Input(format!("missing value for input `{}`", var.name()))
            })?;
            if values.next().is_some() {
                return Err(FuzzyError::Input(format!(
                    "input `{}` assigned more than once",
                    var.name()
                )));
            }
            fuzzified.push(var.fuzzify(x));
        }
        Ok(fuzzified)
    }

    pub fn infer(&self, inputs: &[FuzzifiedInput]) -> Result<TermStrengths, FuzzyError> {
        let output = self
            .output_variable()
            .ok_or_else(|| FuzzyError::Config("controller declares no output variable".into()))?;
        RuleBase::new(output, &self.rules).infer(inputs)
    }

    /// Collapses aggregated strengths into a crisp output value.
    pub fn defuzzify(
        &self,
        strengths: &TermStrengths,
        mode: DefuzzMode,
        samples: usize,
    ) -> Result<f64, FuzzyError> {
        match mode {
            DefuzzMode::Centroid => {
                let output = self.output_variable().ok_or_else(|| {
                    FuzzyError::Config("controller declares no output variable".into())
                })?;
                defuzz::defuzzify_centroid(output, strengths, samples)
            }
            DefuzzMode::Paper => {
                let ranges = self.output_ranges.as_ref().ok_or_else(|| {
                    FuzzyError::Config("paper mode requires a RANGES block".into())
                })?;
                defuzz::defuzzify_paper_range(&ranges.ranges, strengths)
            }
        }
    }

    /// The full pipeline: fuzzify, infer, defuzzify.
    pub fn evaluate(
        &self,
        assignments: &[(String, f64)],
        mode: DefuzzMode,
        samples: usize,
    ) -> Result<Decision, FuzzyError> {
        let inputs = self.fuzzify_inputs(assignments)?;
        let fired = self.infer(&inputs)?;
        let value = self.defuzzify(&fired, mode, samples)?;
        let dominant_term = match mode {
            DefuzzMode::Centroid => fired
                .dominant()
                .map(|(name, _)| name.to_string())
                .unwrap_or_default(),
            DefuzzMode::Paper => {
                let ranges = self
                    .output_ranges
                    .as_ref()
                    .expect("defuzzify checked the RANGES block");
                defuzz::paper_selection(&ranges.ranges, &fired)?
                    .0
                    .to_string()
            }
        };
        Ok(Decision {
            value,
            fired,
            dominant_term,
        })
    }
}
