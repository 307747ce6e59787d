//! Line-oriented parser for `.flc` documents.
//!
//! Syntax problems recover at line granularity so one bad line does not mask
//! the rest; name resolution runs only once the whole document scanned
//! cleanly, so reference errors do not cascade out of syntax errors.

use crate::dsl::spec::{ControllerSpec, OutputRanges, SourceAnchors, VariableDecl};
use crate::dsl::Diagnostic;
use crate::membership::MembershipFunction;
use crate::rule::{Clause, Connective, Rule};
use crate::variable::{LinguisticVariable, Term, VarRole};

const KEYWORDS: &[&str] = &[
    "controller",
    "var",
    "input",
    "output",
    "range",
    "unit",
    "term",
    "tri",
    "trap",
    "alias",
    "ranges",
    "rule",
    "if",
    "is",
    "and",
    "or",
    "then",
];

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(f64),
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Number(n) => format!("number {n}"),
            Tok::Eq => "`=`".into(),
        }
    }
}

fn tokenize(line: &str) -> Result<Vec<Tok>, String> {
    let mut toks = Vec::new();
    let mut chars = line.char_indices().peekable();
    while let Some(&(start, ch)) = chars.peek() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            chars.next();
            continue;
        }
        if ch == '=' {
            chars.next();
            toks.push(Tok::Eq);
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut end = start;
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    end = i + c.len_utf8();
                    chars.next();
                } else {
                    break;
                }
            }
            toks.push(Tok::Word(line[start..end].to_string()));
            continue;
        }
        if ch.is_ascii_digit() || ch == '-' || ch == '+' {
            let mut end = start;
            let mut digits = 0usize;
            let mut seen_dot = false;
            chars.next();
            end += ch.len_utf8();
            if ch.is_ascii_digit() {
                digits += 1;
            }
            while let Some(&(i, c)) = chars.peek() {
                if c.is_ascii_digit() {
                    digits += 1;
                } else if c == '.' && !seen_dot {
                    seen_dot = true;
                } else {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let text = &line[start..end];
            if digits == 0 || text.ends_with('.') {
                return Err(format!("malformed number `{text}`"));
            }
            let value: f64 = text
                .parse()
                .map_err(|_| format!("malformed number `{text}`"))?;
            toks.push(Tok::Number(value));
            continue;
        }
        return Err(format!("unexpected character `{ch}`"));
    }
    Ok(toks)
}

/// A token cursor over one line.
struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(toks: &'a [Tok]) -> Self {
        Cursor { toks, pos: 0 }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&Tok> {
        let tok = self.toks.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn keyword(&mut self, kw: &str) -> Result<(), String> {
        match self.next() {
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case(kw) => Ok(()),
            Some(tok) => Err(format!(
                "expected `{}`, found {}",
                kw.to_uppercase(),
                tok.describe()
            )),
            None => Err(format!("expected `{}`", kw.to_uppercase())),
        }
    }

    fn identifier(&mut self, what: &str) -> Result<String, String> {
        match self.next() {
            Some(Tok::Word(w)) => {
                let lower = w.to_ascii_lowercase();
                if KEYWORDS.contains(&lower.as_str()) {
                    Err(format!("`{w}` is a reserved keyword, not a valid {what}"))
                } else {
                    Ok(lower)
                }
            }
            Some(tok) => Err(format!("expected {what}, found {}", tok.describe())),
            None => Err(format!("expected {what}")),
        }
    }

    fn number(&mut self, what: &str) -> Result<f64, String> {
        match self.next() {
            Some(Tok::Number(n)) => Ok(*n),
            Some(tok) => Err(format!("expected {what}, found {}", tok.describe())),
            None => Err(format!("expected {what}")),
        }
    }

    fn done(&mut self) -> Result<(), String> {
        match self.peek() {
            None => Ok(()),
            Some(tok) => Err(format!("unexpected trailing {}", tok.describe())),
        }
    }
}

struct VarBuilder {
    name: String,
    role: VarRole,
    lo: f64,
    hi: f64,
    unit: Option<String>,
    line: usize,
    terms: Vec<(String, MembershipFunction)>,
    aliases: Vec<(String, String, usize)>,
}

impl VarBuilder {
    fn has_name(&self, name: &str) -> bool {
        self.terms.iter().any(|(t, _)| t.eq_ignore_ascii_case(name))
            || self
                .aliases
                .iter()
                .any(|(a, _, _)| a.eq_ignore_ascii_case(name))
    }
}

struct RawRule {
    antecedents: Vec<Clause>,
    connective: Connective,
    consequent: Clause,
    line: usize,
}

#[derive(Clone, Copy, PartialEq)]
enum Context {
    Top,
    Var(usize),
    Ranges,
}

#[derive(Default)]
struct RawRanges {
    variable: String,
    line: usize,
    entries: Vec<(String, f64, f64, usize)>,
}

/// Parses a document into a resolved [`ControllerSpec`], or all collected
/// diagnostics when anything is in error.
pub fn parse_document(source: &str) -> Result<ControllerSpec, Vec<Diagnostic>> {
    let mut diags: Vec<Diagnostic> = Vec::new();
    let mut controller: Option<(String, usize)> = None;
    let mut vars: Vec<VarBuilder> = Vec::new();
    let mut ranges: Option<RawRanges> = None;
    let mut rules: Vec<RawRule> = Vec::new();
    let mut context = Context::Top;

    for (idx, raw_line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let toks = match tokenize(raw_line) {
            Ok(toks) => toks,
            Err(msg) => {
                diags.push(Diagnostic::error(line_no, msg));
                continue;
            }
        };
        if toks.is_empty() {
            continue;
        }
        let head = match &toks[0] {
            Tok::Word(w) => w.to_ascii_lowercase(),
            tok => {
                diags.push(Diagnostic::error(
                    line_no,
                    format!("expected a keyword, found {}", tok.describe()),
                ));
                continue;
            }
        };
        let mut cursor = Cursor::new(&toks);
        let result: Result<(), String> = match head.as_str() {
            "controller" => (|| {
                cursor.keyword("controller")?;
                let name = cursor.identifier("controller name")?;
                cursor.done()?;
                if controller.is_some() {
                    return Err("duplicate CONTROLLER declaration".into());
                }
                if !vars.is_empty() || !rules.is_empty() || ranges.is_some() {
                    return Err("CONTROLLER must be the first declaration".into());
                }
                controller = Some((name, line_no));
                Ok(())
            })(),
            "var" => (|| {
                cursor.keyword("var")?;
                let role = match cursor.next() {
                    Some(Tok::Word(w)) if w.eq_ignore_ascii_case("input") => VarRole::Input,
                    Some(Tok::Word(w)) if w.eq_ignore_ascii_case("output") => VarRole::Output,
                    Some(tok) => {
                        return Err(format!(
                            "expected INPUT or OUTPUT, found {}",
                            tok.describe()
                        ))
                    }
                    None => return Err("expected INPUT or OUTPUT".into()),
                };
                let name = cursor.identifier("variable name")?;
                cursor.keyword("range")?;
                let lo = cursor.number("range lower bound")?;
                let hi = cursor.number("range upper bound")?;
                let unit = if cursor.peek().is_some() {
                    cursor.keyword("unit")?;
                    Some(cursor.identifier("unit label")?)
                } else {
                    None
                };
                cursor.done()?;
                if vars.iter().any(|v| v.name.eq_ignore_ascii_case(&name)) {
                    return Err(format!("duplicate declaration of variable `{name}`"));
                }
                if lo >= hi {
                    return Err(format!("range [{lo}, {hi}] must satisfy lo < hi"));
                }
                vars.push(VarBuilder {
                    name,
                    role,
                    lo,
                    hi,
                    unit,
                    line: line_no,
                    terms: Vec::new(),
                    aliases: Vec::new(),
                });
                context = Context::Var(vars.len() - 1);
                Ok(())
            })(),
            "term" => (|| {
                cursor.keyword("term")?;
                let Context::Var(var_idx) = context else {
                    return Err("TERM outside a VAR block".into());
                };
                let name = cursor.identifier("term name")?;
                let shape = match cursor.next() {
                    Some(Tok::Word(w)) if w.eq_ignore_ascii_case("tri") => "tri",
                    Some(Tok::Word(w)) if w.eq_ignore_ascii_case("trap") => "trap",
                    Some(tok) => {
                        return Err(format!("expected TRI or TRAP, found {}", tok.describe()))
                    }
                    None => return Err("expected TRI or TRAP".into()),
                };
                let mf = if shape == "tri" {
                    let a = cursor.number("breakpoint")?;
                    let b = cursor.number("breakpoint")?;
                    let c = cursor.number("breakpoint")?;
                    MembershipFunction::triangular(a, b, c)
                } else {
                    let a = cursor.number("breakpoint")?;
                    let b = cursor.number("breakpoint")?;
                    let c = cursor.number("breakpoint")?;
                    let d = cursor.number("breakpoint")?;
                    MembershipFunction::trapezoidal(a, b, c, d)
                }
                .map_err(|e| e.to_string())?;
                cursor.done()?;
                let var = &mut vars[var_idx];
                if var.has_name(&name) {
                    return Err(format!(
                        "duplicate declaration of term `{name}` in variable `{}`",
                        var.name
                    ));
                }
                let (slo, shi) = mf.support();
                if slo < var.lo || shi > var.hi {
                    return Err(format!(
                        "term `{name}` breakpoints lie outside the universe [{}, {}]",
                        var.lo, var.hi
                    ));
                }
                var.terms.push((name, mf));
                Ok(())
            })(),
            "alias" => (|| {
                cursor.keyword("alias")?;
                let Context::Var(var_idx) = context else {
                    return Err("ALIAS outside a VAR block".into());
                };
                let alias = cursor.identifier("alias name")?;
                match cursor.next() {
                    Some(Tok::Eq) => {}
                    Some(tok) => return Err(format!("expected `=`, found {}", tok.describe())),
                    None => return Err("expected `=`".into()),
                }
                let target = cursor.identifier("term name")?;
                cursor.done()?;
                let var = &mut vars[var_idx];
                if var.has_name(&alias) {
                    return Err(format!(
                        "duplicate declaration of `{alias}` in variable `{}`",
                        var.name
                    ));
                }
                var.aliases.push((alias, target, line_no));
                Ok(())
            })(),
            "ranges" => (|| {
                cursor.keyword("ranges")?;
                let variable = cursor.identifier("output variable name")?;
                cursor.done()?;
                if ranges.is_some() {
                    return Err("duplicate RANGES block".into());
                }
                ranges = Some(RawRanges {
                    variable,
                    line: line_no,
                    entries: Vec::new(),
                });
                context = Context::Ranges;
                Ok(())
            })(),
            "rule" => (|| {
                cursor.keyword("rule")?;
                cursor.keyword("if")?;
                let mut antecedents = Vec::new();
                let mut connective: Option<Connective> = None;
                loop {
                    let variable = cursor.identifier("variable name")?;
                    cursor.keyword("is")?;
                    let term = cursor.identifier("term name")?;
                    antecedents.push(Clause::new(variable, term));
                    match cursor.next() {
                        Some(Tok::Word(w)) if w.eq_ignore_ascii_case("and") => {
                            if connective == Some(Connective::Or) {
                                return Err("mixed AND/OR in one rule".into());
                            }
                            connective = Some(Connective::And);
                        }
                        Some(Tok::Word(w)) if w.eq_ignore_ascii_case("or") => {
                            if connective == Some(Connective::And) {
                                return Err("mixed AND/OR in one rule".into());
                            }
                            connective = Some(Connective::Or);
                        }
                        Some(Tok::Word(w)) if w.eq_ignore_ascii_case("then") => break,
                        Some(tok) => {
                            return Err(format!(
                                "expected AND, OR or THEN, found {}",
                                tok.describe()
                            ))
                        }
                        None => return Err("expected AND, OR or THEN".into()),
                    }
                }
                let out_var = cursor.identifier("output variable name")?;
                cursor.keyword("is")?;
                let out_term = cursor.identifier("term name")?;
                cursor.done()?;
                rules.push(RawRule {
                    antecedents,
                    connective: connective.unwrap_or(Connective::And),
                    consequent: Clause::new(out_var, out_term),
                    line: line_no,
                });
                context = Context::Top;
                Ok(())
            })(),
            _ => {
                // A bare identifier line is a range entry inside a RANGES
                // block, a syntax error anywhere else.
                if context == Context::Ranges {
                    (|| {
                        let term = cursor.identifier("term name")?;
                        let min = cursor.number("range minimum")?;
                        let max = cursor.number("range maximum")?;
                        cursor.done()?;
                        ranges
                            .as_mut()
                            .expect("ranges context implies a block")
                            .entries
                            .push((term, min, max, line_no));
                        Ok(())
                    })()
                } else {
                    Err(format!(
                        "unknown keyword `{head}` (expected CONTROLLER, VAR, TERM, ALIAS, RANGES or RULE)"
                    ))
                }
            }
        };
        if let Err(msg) = result {
            diags.push(Diagnostic::error(line_no, msg));
        }
    }

    if controller.is_none() {
        diags.push(Diagnostic::error(1, "missing CONTROLLER declaration"));
    }
    if diags.iter().any(Diagnostic::is_error) {
        return Err(diags);
    }

    resolve(
        controller.expect("checked above"),
        vars,
        ranges,
        rules,
        diags,
    )
}

/// Second pass: resolve names, enforce structural invariants, and build the
/// final spec.
fn resolve(
    controller: (String, usize),
    vars: Vec<VarBuilder>,
    ranges: Option<RawRanges>,
    rules: Vec<RawRule>,
    mut diags: Vec<Diagnostic>,
) -> Result<ControllerSpec, Vec<Diagnostic>> {
    let mut decls: Vec<VariableDecl> = Vec::new();
    let mut variable_lines = Vec::new();
    for builder in vars {
        let mut aliases = Vec::new();
        for (alias, target, line) in &builder.aliases {
            match builder
                .terms
                .iter()
                .find(|(t, _)| t.eq_ignore_ascii_case(target))
            {
                Some((canonical, _)) => aliases.push((alias.clone(), canonical.clone())),
                None => diags.push(Diagnostic::error(
                    *line,
                    format!(
                        "unknown term `{target}` for alias `{alias}` in variable `{}`",
                        builder.name
                    ),
                )),
            }
        }
        let terms = builder
            .terms
            .iter()
            .map(|(name, mf)| Term {
                name: name.clone(),
                membership: *mf,
            })
            .collect();
        match LinguisticVariable::new(
            builder.name.clone(),
            builder.role,
            builder.lo,
            builder.hi,
            builder.unit.clone(),
            terms,
        ) {
            Ok(variable) => {
                variable_lines.push(builder.line);
                decls.push(VariableDecl { variable, aliases });
            }
            // Per-line checks already cover these; keep the anchor anyway.
            Err(e) => diags.push(Diagnostic::error(builder.line, e.to_string())),
        }
    }

    let outputs: Vec<usize> = decls
        .iter()
        .enumerate()
        .filter(|(_, d)| d.variable.role() == VarRole::Output)
        .map(|(i, _)| i)
        .collect();
    match outputs.len() {
        1 => {}
        0 => diags.push(Diagnostic::error(
            controller.1,
            "controller must declare exactly one OUTPUT variable, found none",
        )),
        _ => diags.push(Diagnostic::error(
            variable_lines[outputs[1]],
            "controller must declare exactly one OUTPUT variable",
        )),
    }

    let mut resolved_rules = Vec::new();
    let mut rule_lines = Vec::new();
    for raw in &rules {
        let mut ok = true;
        let mut antecedents = Vec::new();
        for clause in &raw.antecedents {
            match lookup(&decls, &clause.variable) {
                Some(decl) => {
                    if decl.variable.role() != VarRole::Input {
                        diags.push(Diagnostic::error(
                            raw.line,
                            format!(
                                "rule antecedent references output variable `{}`",
                                clause.variable
                            ),
                        ));
                        ok = false;
                    } else {
                        match decl.resolve_term(&clause.term) {
                            Some(term) => {
                                antecedents.push(Clause::new(clause.variable.clone(), term))
                            }
                            None => {
                                diags.push(Diagnostic::error(
                                    raw.line,
                                    format!(
                                        "unknown term `{}` in variable `{}`",
                                        clause.term, clause.variable
                                    ),
                                ));
                                ok = false;
                            }
                        }
                    }
                }
                None => {
                    diags.push(Diagnostic::error(
                        raw.line,
                        format!("unknown variable `{}`", clause.variable),
                    ));
                    ok = false;
                }
            }
        }
        let consequent = match lookup(&decls, &raw.consequent.variable) {
            Some(decl) => {
                if decl.variable.role() != VarRole::Output {
                    diags.push(Diagnostic::error(
                        raw.line,
                        format!(
                            "rule consequent must reference the output variable, not `{}`",
                            raw.consequent.variable
                        ),
                    ));
                    ok = false;
                    None
                } else {
                    match decl.resolve_term(&raw.consequent.term) {
                        Some(term) => Some(Clause::new(raw.consequent.variable.clone(), term)),
                        None => {
                            diags.push(Diagnostic::error(
                                raw.line,
                                format!(
                                    "unknown term `{}` in variable `{}`",
                                    raw.consequent.term, raw.consequent.variable
                                ),
                            ));
                            ok = false;
                            None
                        }
                    }
                }
            }
            None => {
                diags.push(Diagnostic::error(
                    raw.line,
                    format!("unknown variable `{}`", raw.consequent.variable),
                ));
                ok = false;
                None
            }
        };
        if ok {
            let rule = Rule::new(
                antecedents,
                raw.connective,
                consequent.expect("ok implies a resolved consequent"),
            )
            .expect("parser never yields empty antecedents");
            rule_lines.push(raw.line);
            resolved_rules.push(rule);
        }
    }

    let mut output_ranges = None;
    let mut ranges_line = 0;
    if let Some(raw) = ranges {
        ranges_line = raw.line;
        match lookup(&decls, &raw.variable) {
            Some(decl) if decl.variable.role() == VarRole::Output => {
                let mut table = crate::defuzz::TermRanges::new();
                for (term, min, max, line) in &raw.entries {
                    match decl.resolve_term(term) {
                        Some(canonical) => {
                            if table.get(canonical).is_some() {
                                diags.push(Diagnostic::error(
                                    *line,
                                    format!("duplicate range entry for term `{canonical}`"),
                                ));
                            } else {
                                table.insert(canonical, *min, *max);
                            }
                        }
                        None => diags.push(Diagnostic::error(
                            *line,
                            format!("unknown term `{term}` in variable `{}`", raw.variable),
                        )),
                    }
                }
                for term in decl.variable.terms() {
                    if table.get(&term.name).is_none() {
                        diags.push(Diagnostic::error(
                            raw.line,
                            format!("RANGES block is missing term `{}`", term.name),
                        ));
                    }
                }
                output_ranges = Some(OutputRanges {
                    variable: decl.variable.name().to_string(),
                    ranges: table,
                });
            }
            Some(_) => diags.push(Diagnostic::error(
                raw.line,
                format!(
                    "RANGES must target an output variable, `{}` is an input",
                    raw.variable
                ),
            )),
            None => diags.push(Diagnostic::error(
                raw.line,
                format!("unknown variable `{}`", raw.variable),
            )),
        }
    }

    if diags.iter().any(Diagnostic::is_error) {
        return Err(diags);
    }

    Ok(ControllerSpec {
        name: controller.0,
        variables: decls,
        rules: resolved_rules,
        output_ranges,
        anchors: Some(SourceAnchors {
            controller_line: controller.1,
            variable_lines,
            rule_lines,
            ranges_line,
        }),
    })
}

fn lookup<'a>(decls: &'a [VariableDecl], name: &str) -> Option<&'a VariableDecl> {
    decls
        .iter()
        .find(|d| d.variable.name().eq_ignore_ascii_case(name))
}
