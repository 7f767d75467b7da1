//! The session language: definitions of sets, functions, descriptions,
//! ornaments and algebras, followed by commands whose results are printed
//! as one JSON record per line.

pub mod emit;
mod eval;
pub mod sexpr;
pub mod syntax;

use std::collections::BTreeSet;

use serde_json::json;

pub use eval::{report_json, run_session, Outcome, Record, RunOutput, Status};
pub use sexpr::{ParseError, Pos};
pub use syntax::{command_names, Form, Kind, Statement};

/// Default enumeration depth for commands that take an optional one.
pub const DEFAULT_DEPTH: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Session {
    pub statements: Vec<Statement>,
}

/// Reads and checks every form. All syntax errors and repeated names are
/// collected; the session is only returned when there are none.
pub fn parse_session(text: &str) -> Result<Session, Vec<ParseError>> {
    let forms = sexpr::read_all(text).map_err(|e| vec![e])?;
    let mut errors = Vec::new();
    let mut statements = Vec::with_capacity(forms.len());
    let mut seen = BTreeSet::new();
    for x in &forms {
        match syntax::form(x) {
            Ok(form) => {
                if let Some((name, kind)) = form.binding() {
                    if !seen.insert((kind, name.text.clone())) {
                        errors.push(ParseError::new(
                            name.pos,
                            format!("{} `{name}` is already defined", kind.as_str()),
                            &[],
                        ));
                    }
                }
                statements.push(Statement { form, text: x.to_string(), pos: x.pos() });
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(Session { statements })
    } else {
        Err(errors)
    }
}

fn parse_error_record(e: &ParseError) -> Record {
    Record {
        cmd: None,
        status: Status::Error,
        payload: json!({
            "code": "E-PARSE",
            "message": e.message,
            "line": e.pos.line,
            "column": e.pos.column,
            "expected": e.expected,
        }),
    }
}

/// Parses and runs `text`. A parse failure produces one record per error
/// and runs nothing.
pub fn run_text(text: &str, depth: usize) -> RunOutput {
    match parse_session(text) {
        Ok(s) => run_session(&s, depth),
        Err(errors) => {
            RunOutput { records: errors.iter().map(parse_error_record).collect(), outcome: Outcome::Invalid }
        }
    }
}
