//! Semantic checks beyond what parsing enforces.
//!
//! Errors: unresolved references (for programmatically built specs),
//! missing/incomplete RANGES coverage, duplicate rules with conflicting
//! consequents. Warnings: input-term combinations no rule covers, and
//! universe stretches where no term has positive degree.

use crate::dsl::spec::{ControllerSpec, SourceAnchors, VariableDecl};
use crate::dsl::Diagnostic;
use crate::rule::{Connective, Rule};
use crate::variable::VarRole;

const COVERAGE_GRID: usize = 1001;

pub fn validate(spec: &ControllerSpec) -> Vec<Diagnostic> {
    let mut diags = Vec::new();
    let anchors = spec.anchors.clone().unwrap_or_default();

    check_structure(spec, &anchors, &mut diags);
    check_conflicting_consequents(spec, &anchors, &mut diags);
    check_rule_coverage(spec, &anchors, &mut diags);
    check_universe_coverage(spec, &anchors, &mut diags);

    diags
}

/// Reference resolution for specs that did not come through the parser.
fn check_structure(spec: &ControllerSpec, anchors: &SourceAnchors, diags: &mut Vec<Diagnostic>) {
    let outputs = spec
        .variables
        .iter()
        .filter(|d| d.variable.role() == VarRole::Output)
        .count();
    if outputs != 1 {
        diags.push(Diagnostic::error(
            anchors.controller_line,
            format!("controller must declare exactly one OUTPUT variable, found {outputs}"),
        ));
    }

    for (i, rule) in spec.rules.iter().enumerate() {
        let line = anchors.rule_line(i);
        for clause in rule.antecedents.iter().chain([&rule.consequent]) {
            match spec.variable(&clause.variable) {
                Some(decl) => {
                    if decl.resolve_term(&clause.term).is_none() {
                        diags.push(Diagnostic::error(
                            line,
                            format!(
                                "unknown term `{}` in variable `{}`",
                                clause.term, clause.variable
                            ),
                        ));
                    }
                }
                None => diags.push(Diagnostic::error(
                    line,
                    format!("unknown variable `{}`", clause.variable),
                )),
            }
        }
    }

    if let Some(ranges) = &spec.output_ranges {
        let line = anchors.ranges_line.max(1);
        match spec.variable(&ranges.variable) {
            Some(decl) => {
                for term in decl.variable.terms() {
                    if ranges.ranges.get(&term.name).is_none() {
                        diags.push(Diagnostic::error(
                            line,
                            format!("RANGES block is missing term `{}`", term.name),
                        ));
                    }
                }
            }
            None => diags.push(Diagnostic::error(
                line,
                format!("unknown variable `{}`", ranges.variable),
            )),
        }
    }
}

/// Canonical antecedent key: connective plus sorted `(variable, term)`
/// pairs, so clause order does not hide a conflict.
fn antecedent_key(rule: &Rule) -> (Connective, Vec<(String, String)>) {
    let mut clauses: Vec<(String, String)> = rule
        .antecedents
        .iter()
        .map(|c| (c.variable.to_lowercase(), c.term.to_lowercase()))
        .collect();
    clauses.sort();
    (rule.connective, clauses)
}

fn check_conflicting_consequents(
    spec: &ControllerSpec,
    anchors: &SourceAnchors,
    diags: &mut Vec<Diagnostic>,
) {
    for (j, later) in spec.rules.iter().enumerate() {
        for earlier in &spec.rules[..j] {
            if antecedent_key(earlier) == antecedent_key(later)
                && !earlier
                    .consequent
                    .term
                    .eq_ignore_ascii_case(&later.consequent.term)
            {
                diags.push(Diagnostic::error(
                    anchors.rule_line(j),
                    format!(
                        "conflicting consequents: identical antecedents conclude `{}` and `{}`",
                        earlier.consequent.term, later.consequent.term
                    ),
                ));
            }
        }
    }
}

/// Warns about every input-term combination no rule fires on. A rule covers
/// a combination when all (AND) or any (OR) of its clauses match it.
fn check_rule_coverage(
    spec: &ControllerSpec,
    anchors: &SourceAnchors,
    diags: &mut Vec<Diagnostic>,
) {
    let inputs: Vec<&VariableDecl> = spec.input_variables().collect();
    if inputs.is_empty() || inputs.iter().any(|d| d.variable.terms().is_empty()) {
        return;
    }
    let counts: Vec<usize> = inputs.iter().map(|d| d.variable.terms().len()).collect();
    let total: usize = counts.iter().product();
    let line = anchors
        .rule_lines
        .last()
        .copied()
        .unwrap_or(anchors.controller_line)
        .max(1);

    for index in 0..total {
        let mut rest = index;
        let combo: Vec<(&str, &str)> = inputs
            .iter()
            .zip(&counts)
            .map(|(decl, n)| {
                let pick = rest % n;
                rest /= n;
                (
                    decl.variable.name(),
                    decl.variable.terms()[pick].name.as_str(),
                )
            })
            .collect();
        let covered = spec.rules.iter().any(|rule| {
            let matches = |clause: &crate::rule::Clause| {
                combo.iter().any(|(var, term)| {
                    clause.variable.eq_ignore_ascii_case(var)
                        && clause.term.eq_ignore_ascii_case(term)
                })
            };
            match rule.connective {
                Connective::And => rule.antecedents.iter().all(matches),
                Connective::Or => rule.antecedents.iter().any(matches),
            }
        });
        if !covered {
            let label = combo
                .iter()
                .map(|(_, term)| term.to_string())
                .collect::<Vec<_>>()
                .join("\u{d7}");
            diags.push(Diagnostic::warning(
                line,
                format!("uncovered combination {label}"),
            ));
        }
    }
}

fn check_universe_coverage(
    spec: &ControllerSpec,
    anchors: &SourceAnchors,
    diags: &mut Vec<Diagnostic>,
) {
    for (i, decl) in spec.variables.iter().enumerate() {
        for (start, end) in decl.variable.coverage_gaps(COVERAGE_GRID) {
            diags.push(Diagnostic::warning(
                anchors.variable_line(i),
                format!(
                    "coverage gap in variable `{}`: no term covers [{start}, {end}]",
                    decl.variable.name()
                ),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_document;

    fn two_by_two() -> String {
        "\
CONTROLLER c
VAR INPUT a RANGE 0 1
  TERM lo TRI 0 0 1
  TERM hi TRI 0 1 1
VAR INPUT b RANGE 0 1
  TERM lo TRI 0 0 1
  TERM hi TRI 0 1 1
VAR OUTPUT y RANGE 0 1
  TERM off TRI 0 0 1
  TERM on TRI 0 1 1
RULE IF a IS lo AND b IS lo THEN y IS off
RULE IF a IS lo AND b IS hi THEN y IS off
RULE IF a IS hi AND b IS lo THEN y IS off
RULE IF a IS hi AND b IS hi THEN y IS on
"
        .to_string()
    }

    #[test]
    fn a_complete_rulebase_yields_no_diagnostics() {
        let spec = parse_document(&two_by_two()).unwrap();
        assert!(validate(&spec).is_empty());
    }

    #[test]
    fn a_deleted_rule_becomes_an_uncovered_combination_warning() {
        let source = two_by_two().replace("RULE IF a IS hi AND b IS hi THEN y IS on\n", "");
        let spec = parse_document(&source).unwrap();
        let diags = validate(&spec);
        assert_eq!(diags.len(), 1);
        assert!(!diags[0].is_error());
        assert!(
            diags[0]
                .message
                .contains("uncovered combination hi\u{d7}hi"),
            "got: {}",
            diags[0].message
        );
    }

    #[test]
    fn conflicting_consequents_are_errors() {
        let source = format!(
            "{}RULE IF a IS hi AND b IS hi THEN y IS off\n",
            two_by_two()
        );
        let spec = parse_document(&source).unwrap();
        let diags = validate(&spec);
        assert!(diags
            .iter()
            .any(|d| d.is_error() && d.message.contains("conflicting consequents")));
        // Clause order must not hide the conflict.
        let swapped = format!(
            "{}RULE IF b IS hi AND a IS hi THEN y IS off\n",
            two_by_two()
        );
        let spec = parse_document(&swapped).unwrap();
        assert!(validate(&spec)
            .iter()
            .any(|d| d.message.contains("conflicting consequents")));
    }

    #[test]
    fn coverage_gaps_are_warnings_with_the_variable_line() {
        let source = "\
CONTROLLER c
VAR INPUT a RANGE 0 10
  TERM left TRI 0 0 4
VAR OUTPUT y RANGE 0 1
  TERM t TRI 0 0.5 1
RULE IF a IS left THEN y IS t
";
        let spec = parse_document(source).unwrap();
        let diags = validate(&spec);
        assert!(diags
            .iter()
            .any(|d| !d.is_error() && d.line == 2 && d.message.contains("coverage gap")));
    }

    #[test]
    fn empty_rule_lists_report_every_combination() {
        let source = "\
CONTROLLER c
VAR INPUT a RANGE 0 1
  TERM lo TRI 0 0 1
  TERM hi TRI 0 1 1
VAR OUTPUT y RANGE 0 1
  TERM t TRAP 0 0 1 1
";
        let spec = parse_document(source).unwrap();
        let warnings = validate(&spec);
        assert_eq!(warnings.len(), 2);
        assert!(warnings.iter().all(|d| !d.is_error()));
    }
}
