//! Defuzzification: collapsing aggregated output strengths into one crisp
//! value.
//!
//! Two modes ship. `Centroid` is the default: every output term is clipped
//! at its firing strength, the clipped shapes are combined by pointwise max,
//! and the center of area of the combination is computed by midpoint-rule
//! integration. `Paper` reproduces the strength-scaled physical-range
//! arithmetic of the reference controller: the dominant term's strength
//! interpolates linearly into that term's declared physical range.

use std::fmt;

use crate::error::FuzzyError;
use crate::inference::TermStrengths;
use crate::variable::LinguisticVariable;

/// Which defuzzifier a controller evaluation uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DefuzzMode {
    Centroid,
    Paper,
}

impl fmt::Display for DefuzzMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DefuzzMode::Centroid => write!(f, "centroid"),
            DefuzzMode::Paper => write!(f, "paper"),
        }
    }
}

/// Ordered mapping of output terms to closed physical ranges `[min, max]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TermRanges {
    entries: Vec<(String, f64, f64)>,
}

impl TermRanges {
    pub fn new() -> Self {
        TermRanges::default()
    }

    pub fn insert(&mut self, term: impl Into<String>, min: f64, max: f64) {
        self.entries.push((term.into(), min, max));
    }

    /// Case-insensitive range lookup.
    pub fn get(&self, term: &str) -> Option<(f64, f64)> {
        self.entries
            .iter()
            .find(|(name, _, _)| name.eq_ignore_ascii_case(term))
            .map(|(_, lo, hi)| (*lo, *hi))
    }

    pub fn entries(&self) -> &[(String, f64, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<(String, f64, f64)> for TermRanges {
    fn from_iter<I: IntoIterator<Item = (String, f64, f64)>>(iter: I) -> Self {
        TermRanges {
            entries: iter.into_iter().collect(),
        }
    }
}

/// Centroid of the clipped-and-aggregated output membership, integrated with
/// the midpoint rule over `samples` uniform cells spanning the universe.
///
/// All-zero strengths (or a fired set with zero integrable area, e.g. a
/// degenerate point triangle) yield [`FuzzyError::NoRuleFired`].
pub fn defuzzify_centroid(
    var: &LinguisticVariable,
    strengths: &TermStrengths,
    samples: usize,
) -> Result<f64, FuzzyError> {
    if samples == 0 {
        return Err(FuzzyError::Config("samples must be positive".into()));
    }
    if strengths.all_zero() {
        return Err(FuzzyError::NoRuleFired);
    }
    // Pair each term with its strength once, skipping silent terms.
    let clipped: Vec<_> = var
        .terms()
        .iter()
        .filter_map(|t| {
            let s = strengths.strength(&t.name).unwrap_or(0.0);
            (s > 0.0).then_some((t.membership, s))
        })
        .collect();

    let (lo, hi) = var.universe();
    let h = (hi - lo) / samples as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..samples {
        let x = lo + (i as f64 + 0.5) * h;
        let mut mu = 0.0f64;
        for (mf, s) in &clipped {
            let v = s.min(mf.evaluate(x));
            if v > mu {
                mu = v;
            }
        }
        num += x * mu;
        den += mu;
    }
    if den == 0.0 {
        // Positive strengths but no sampled area (degenerate supports).
        return Err(FuzzyError::NoRuleFired);
    }
    Ok(num / den)
}

/// The strength-scaled physical-range defuzzifier.
///
/// Selects the term with maximal strength (ties broken toward the larger
/// range midpoint) and returns `min + strength * (max - min)` of its range.
pub fn defuzzify_paper_range(
    ranges: &TermRanges,
    strengths: &TermStrengths,
) -> Result<f64, FuzzyError> {
    let (_, strength, min, max) = paper_selection(ranges, strengths)?;
    Ok(min + strength * (max - min))
}

/// Dominant-term selection shared by paper-mode defuzzification and
/// decision reporting. Every fired term must have a declared range.
pub(crate) fn paper_selection<'a>(
    ranges: &TermRanges,
    strengths: &'a TermStrengths,
) -> Result<(&'a str, f64, f64, f64), FuzzyError> {
    if strengths.all_zero() {
        return Err(FuzzyError::NoRuleFired);
    }
    let mut best: Option<(&str, f64, f64, f64)> = None;
    for (term, s) in &strengths.strengths {
        if *s == 0.0 {
            continue;
        }
        let (min, max) = ranges
            .get(term)
            .ok_or_else(|| FuzzyError::MissingRange(term.clone()))?;
        let midpoint = 0.5 * (min + max);
        let better = match best {
            None => true,
            Some((_, bs, bmin, bmax)) => *s > bs || (*s == bs && midpoint > 0.5 * (bmin + bmax)),
        };
        if better {
            best = Some((term, *s, min, max));
        }
    }
    best.ok_or(FuzzyError::NoRuleFired)
}
