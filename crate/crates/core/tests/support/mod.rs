//! Shared test support: independent oracles and generators.
//!
//! Everything here deliberately avoids the library's integration paths: the
//! centroid oracle evaluates membership pointwise and integrates with the
//! trapezoid rule, so it can cross-check `defuzzify_centroid`'s midpoint-rule
//! implementation without sharing code with it.

// Each test binary uses its own slice of this module.
#![allow(dead_code)]

use fuzzctl_core::dsl::{ControllerSpec, OutputRanges, VariableDecl};
use fuzzctl_core::{
    Clause, Connective, LinguisticVariable, MembershipFunction, Rule, Term, TermRanges,
    TermStrengths, VarRole,
};
use rand::rngs::StdRng;
use rand::Rng;

/// Aggregated output membership at `x`: every term clipped at its firing
/// strength (pointwise min), combined by pointwise max.
pub fn aggregated_membership(var: &LinguisticVariable, strengths: &TermStrengths, x: f64) -> f64 {
    let mut best = 0.0f64;
    for term in var.terms() {
        let s = strengths.strength(&term.name).unwrap_or(0.0);
        let clipped = s.min(term.membership.evaluate(x));
        if clipped > best {
            best = clipped;
        }
    }
    best
}

/// Brute-force centroid: trapezoid-rule integration of `x * mu(x)` over
/// `mu(x)` on `intervals` uniform cells spanning the whole universe.
///
/// Returns `None` when the integrated area is zero (nothing fired).
pub fn centroid_oracle(
    var: &LinguisticVariable,
    strengths: &TermStrengths,
    intervals: usize,
) -> Option<f64> {
    let (lo, hi) = var.universe();
    let n = intervals.max(1);
    let h = (hi - lo) / n as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..=n {
        let x = lo + (hi - lo) * (i as f64 / n as f64);
        let mu = aggregated_membership(var, strengths, x);
        // Endpoint weights are halved under the trapezoid rule.
        let w = if i == 0 || i == n { 0.5 } else { 1.0 };
        num += w * x * mu;
        den += w * mu;
    }
    if den * h == 0.0 {
        None
    } else {
        Some(num / den)
    }
}

/// Strength vector over the variable's terms, for driving the oracle.
pub fn strengths_for(var: &LinguisticVariable, values: &[f64]) -> TermStrengths {
    assert_eq!(var.terms().len(), values.len());
    TermStrengths {
        variable: var.name().to_string(),
        strengths: var
            .terms()
            .iter()
            .zip(values)
            .map(|(t, v)| (t.name.clone(), *v))
            .collect(),
    }
}

/// Quarter-unit random value in `[lo, hi]`, so generated documents stay
/// readable while still exercising fractional rendering.
fn quarters(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    let steps = ((hi - lo) * 4.0).round() as i64;
    lo + rng.gen_range(0..=steps) as f64 * 0.25
}

fn random_membership(rng: &mut StdRng, lo: f64, hi: f64) -> MembershipFunction {
    let trap = rng.gen_bool(0.3);
    let count = if trap { 4 } else { 3 };
    let mut points: Vec<f64> = (0..count).map(|_| quarters(rng, lo, hi)).collect();
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if trap {
        MembershipFunction::trapezoidal(points[0], points[1], points[2], points[3]).unwrap()
    } else {
        MembershipFunction::triangular(points[0], points[1], points[2]).unwrap()
    }
}

fn random_variable(rng: &mut StdRng, name: &str, role: VarRole) -> VariableDecl {
    let lo = quarters(rng, -20.0, 20.0);
    let hi = lo + quarters(rng, 2.0, 60.0);
    let unit = rng
        .gen_bool(0.5)
        .then(|| format!("u{}", rng.gen_range(0..3)));
    let term_count = rng.gen_range(1..=4);
    let terms: Vec<Term> = (0..term_count)
        .map(|i| Term {
            name: format!("t{i}"),
            membership: random_membership(rng, lo, hi),
        })
        .collect();
    let alias_count = rng.gen_range(0..=2usize.min(term_count));
    let aliases: Vec<(String, String)> = (0..alias_count)
        .map(|i| {
            (
                format!("alias{i}"),
                format!("t{}", rng.gen_range(0..term_count)),
            )
        })
        .collect();
    VariableDecl {
        variable: LinguisticVariable::new(name, role, lo, hi, unit, terms).unwrap(),
        aliases,
    }
}

/// A random well-formed controller. Rules reference canonical term names so
/// that `parse(serialize(spec)) == spec` holds structurally.
pub fn random_spec(rng: &mut StdRng, index: usize) -> ControllerSpec {
    let input_count = rng.gen_range(1..=3);
    let mut variables: Vec<VariableDecl> = (0..input_count)
        .map(|i| random_variable(rng, &format!("in{i}"), VarRole::Input))
        .collect();
    variables.push(random_variable(rng, "out", VarRole::Output));
    let output_terms: Vec<String> = variables
        .last()
        .unwrap()
        .variable
        .terms()
        .iter()
        .map(|t| t.name.clone())
        .collect();

    let rule_count = rng.gen_range(0..=8);
    let mut rules = Vec::new();
    for _ in 0..rule_count {
        let mut antecedents = Vec::new();
        for decl in &variables[..input_count] {
            if antecedents.is_empty() || rng.gen_bool(0.7) {
                let terms = decl.variable.terms();
                let term = &terms[rng.gen_range(0..terms.len())];
                antecedents.push(Clause::new(decl.variable.name(), term.name.clone()));
            }
        }
        let connective = if rng.gen_bool(0.5) {
            Connective::And
        } else {
            Connective::Or
        };
        let consequent = Clause::new(
            "out",
            output_terms[rng.gen_range(0..output_terms.len())].clone(),
        );
        rules.push(Rule::new(antecedents, connective, consequent).unwrap());
    }

    let output_ranges = rng.gen_bool(0.5).then(|| {
        let mut ranges = TermRanges::new();
        for term in &output_terms {
            let a = quarters(rng, 0.0, 20.0);
            let b = a + quarters(rng, 0.0, 10.0);
            ranges.insert(term.clone(), a, b);
        }
        OutputRanges {
            variable: "out".into(),
            ranges,
        }
    });

    ControllerSpec::new(format!("spec_{index}"), variables, rules, output_ranges)
}
