//! The `.flc` controller-definition language: parse, validate, serialize.
//!
//! The grammar is line-oriented and intentionally small — variables with
//! triangular/trapezoidal terms, term aliases, physical output ranges, and
//! uniform-connective IF/THEN rules:
//!
//! ```text
//! CONTROLLER <name>
//! VAR (INPUT|OUTPUT) <name> RANGE <lo> <hi> [UNIT <label>]
//!   TERM <name> (TRI <a> <b> <c> | TRAP <a> <b> <c> <d>)
//!   [ALIAS <name> = <term>]
//! [RANGES <output-var>
//!   <term> <min> <max>]
//! RULE IF <var> IS <term> (AND|OR <var> IS <term>)* THEN <var> IS <term>
//! ```
//!
//! Keywords and identifiers are case-insensitive; identifiers canonicalize
//! to lower case. `#` starts a comment to end of line; blank lines are
//! ignored. Numbers are plain decimals with an optional fraction.

mod parse;
mod serialize;
mod spec;
mod validate;

pub use parse::parse_document;
pub use serialize::serialize;
pub use spec::{ControllerSpec, Decision, OutputRanges, SourceAnchors, VariableDecl};
pub use validate::validate;

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// One parser or validator finding, anchored to a 1-based source line.
#[derive(Debug, Clone, PartialEq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn error(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            line: line.max(1),
            message: message.into(),
        }
    }

    pub fn warning(line: usize, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Warning,
            line: line.max(1),
            message: message.into(),
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{} (line {}): {}", kind, self.line, self.message)
    }
}
