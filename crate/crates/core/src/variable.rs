//! Linguistic variables: a named universe of discourse partitioned into
//! named fuzzy terms.

use crate::error::FuzzyError;
use crate::membership::MembershipFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarRole {
    Input,
    Output,
}

/// A named term owning its membership function.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub name: String,
    pub membership: MembershipFunction,
}

/// A named universe (closed interval, optional unit label) plus an ordered
/// list of named terms.
///
/// Term names are unique case-insensitively; all lookups by name are
/// case-insensitive. Term breakpoints must lie within the universe.
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    role: VarRole,
    lo: f64,
    hi: f64,
    unit: Option<String>,
    terms: Vec<Term>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        role: VarRole,
        lo: f64,
        hi: f64,
        unit: Option<String>,
        terms: Vec<Term>,
    ) -> Result<Self, FuzzyError> {
        let name = name.into();
        let invalid = |reason: String| FuzzyError::Variable {
            name: name.clone(),
            reason,
        };
        if !lo.is_finite() || !hi.is_finite() || lo >= hi {
            return Err(invalid(format!(
                "universe [{lo}, {hi}] must satisfy lo < hi"
            )));
        }
        for (i, term) in terms.iter().enumerate() {
            let (slo, shi) = term.membership.support();
            if slo < lo || shi > hi {
                return Err(invalid(format!(
                    "term `{}` breakpoints lie outside the universe [{lo}, {hi}]",
                    term.name
                )));
            }
            if terms[..i]
                .iter()
                .any(|t| t.name.eq_ignore_ascii_case(&term.name))
            {
                return Err(invalid(format!("duplicate term `{}`", term.name)));
            }
        }
        Ok(LinguisticVariable {
            name,
            role,
            lo,
            hi,
            unit,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn role(&self) -> VarRole {
        self.role
    }

    /// The closed universe of discourse `[lo, hi]`.
    pub fn universe(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn unit(&self) -> Option<&str> {
        self.unit.as_deref()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Case-insensitive term lookup.
    pub fn term(&self, name: &str) -> Option<&Term> {
        self.terms
            .iter()
            .find(|t| t.name.eq_ignore_ascii_case(name))
    }

    /// Clamps a crisp value into the universe. Out-of-universe readings are
    /// clamped, never rejected: sensors can overshoot calibration.
    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// Fuzzifies a crisp value: one membership degree per term, with `x`
    /// clamped into the universe first.
    pub fn fuzzify(&self, x: f64) -> FuzzifiedInput {
        let x = self.clamp(x);
        FuzzifiedInput {
            variable: self.name.clone(),
            degrees: self
                .terms
                .iter()
                .map(|t| (t.name.clone(), t.membership.evaluate(x)))
                .collect(),
        }
    }

    /// Maximal sub-intervals of the universe where every term evaluates to
    /// zero, located on a uniform grid of `samples` points.
    pub fn coverage_gaps(&self, samples: usize) -> Vec<(f64, f64)> {
        let n = samples.max(2) - 1;
        let span = self.hi - self.lo;
        let mut gaps = Vec::new();
        let mut open: Option<f64> = None;
        for i in 0..=n {
            let x = self.lo + span * (i as f64 / n as f64);
            let covered = self.terms.iter().any(|t| t.membership.evaluate(x) > 0.0);
            match (covered, open) {
                (false, None) => open = Some(x),
                (true, Some(start)) => {
                    gaps.push((start, x));
                    open = None;
                }
                _ => {}
            }
        }
        if let Some(start) = open {
            gaps.push((start, self.hi));
        }
        gaps
    }
}

/// Per-term membership degrees of one variable at one crisp value.
#[derive(Debug, Clone, PartialEq)]
pub struct FuzzifiedInput {
    pub variable: String,
    pub degrees: Vec<(String, f64)>,
}

impl FuzzifiedInput {
    /// Case-insensitive degree lookup.
    pub fn degree(&self, term: &str) -> Option<f64> {
        self.degrees
            .iter()
            .find(|(name, _)| name.eq_ignore_ascii_case(term))
            .map(|(_, d)| *d)
    }
}
