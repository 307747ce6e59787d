//! Canonical rendering of a controller back to `.flc` text.
//!
//! Declarations come before rules, one clause per line, identifiers in
//! lower case, numbers in their shortest exact decimal form. Re-parsing the
//! output reproduces a structurally identical spec.

use std::fmt::Write;

use crate::dsl::spec::ControllerSpec;
use crate::membership::MembershipFunction;
use crate::rule::Connective;
use crate::variable::VarRole;

/// Shortest decimal that parses back to the identical `f64`.
fn num(x: f64) -> String {
    format!("{x}")
}

pub fn serialize(spec: &ControllerSpec) -> String {
    let mut out = String::new();
    writeln!(out, "CONTROLLER {}", spec.name.to_lowercase()).unwrap();

    for decl in &spec.variables {
        let var = &decl.variable;
        let role = match var.role() {
            VarRole::Input => "INPUT",
            VarRole::Output => "OUTPUT",
        };
        let (lo, hi) = var.universe();
        write!(
            out,
            "VAR {role} {} RANGE {} {}",
            var.name().to_lowercase(),
            num(lo),
            num(hi)
        )
        .unwrap();
        if let Some(unit) = var.unit() {
            write!(out, " UNIT {}", unit.to_lowercase()).unwrap();
        }
        out.push('\n');
        for term in var.terms() {
            let name = term.name.to_lowercase();
            match term.membership {
                MembershipFunction::Triangular { a, b, c } => {
                    writeln!(out, "  TERM {name} TRI {} {} {}", num(a), num(b), num(c)).unwrap()
                }
                MembershipFunction::Trapezoidal { a, b, c, d } => writeln!(
                    out,
                    "  TERM {name} TRAP {} {} {} {}",
                    num(a),
                    num(b),
                    num(c),
                    num(d)
                )
                .unwrap(),
            }
        }
        for (alias, target) in &decl.aliases {
            writeln!(
                out,
                "  ALIAS {} = {}",
                alias.to_lowercase(),
                target.to_lowercase()
            )
            .unwrap();
        }
    }

    if let Some(ranges) = &spec.output_ranges {
        writeln!(out, "RANGES {}", ranges.variable.to_lowercase()).unwrap();
        for (term, min, max) in ranges.ranges.entries() {
            writeln!(out, "  {} {} {}", term.to_lowercase(), num(*min), num(*max)).unwrap();
        }
    }

    for rule in &spec.rules {
        let joiner = match rule.connective {
            Connective::And => " AND ",
            Connective::Or => " OR ",
        };
        let antecedents = rule
            .antecedents
            .iter()
            .map(|c| format!("{} IS {}", c.variable.to_lowercase(), c.term.to_lowercase()))
            .collect::<Vec<_>>()
            .join(joiner);
        writeln!(
            out,
            "RULE IF {antecedents} THEN {} IS {}",
            rule.consequent.variable.to_lowercase(),
            rule.consequent.term.to_lowercase()
        )
        .unwrap();
    }

    out
}
