use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}: {message}{}", .pos, expected_suffix(.expected))]
pub struct ParseError {
    pub pos: Pos,
    pub expected: Vec<String>,
    pub message: String,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" | "))
    }
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Self {
        ParseError { pos, expected: expected.iter().map(|s| s.to_string()).collect(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexpr {
    Atom(String, Pos),
    List(Vec<Sexpr>, Pos),
}

impl Sexpr {
    pub fn pos(&self) -> Pos {
        match self {
            Sexpr::Atom(_, p) | Sexpr::List(_, p) => *p,
        }
    }

    pub fn atom(&self) -> Option<&str> {
        match self {
            Sexpr::Atom(a, _) => Some(a),
            Sexpr::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[Sexpr]> {
        match self {
            Sexpr::List(xs, _) => Some(xs),
            Sexpr::Atom(..) => None,
        }
    }

    /// The head symbol and the remaining items of a non-empty list.
    pub fn head(&self) -> Option<(&str, &[Sexpr])> {
        let xs = self.list()?;
        let (h, rest) = xs.split_first()?;
        Some((h.atom()?, rest))
    }
}

/// Canonical single-line rendering.
impl fmt::Display for Sexpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexpr::Atom(a, _) => write!(f, "{a}"),
            Sexpr::List(xs, _) => {
                write!(f, "(")?;
                for (k, x) in xs.iter().enumerate() {
                    if k > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

struct Reader<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexpr, ParseError> {
        self.skip_blank();
        let start = self.pos;
        match self.chars.peek() {
            None => Err(ParseError::new(start, "unexpected end of input", &["(", "atom"])),
            Some(')') => Err(ParseError::new(start, "unbalanced `)`", &["(", "atom"])),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_blank();
                    match self.chars.peek() {
                        None => {
                            return Err(ParseError::new(self.pos, format!("list opened at {start} is never closed"), &[")"]))
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Sexpr::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut s = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    s.push(c);
                    self.bump();
                }
                Ok(Sexpr::Atom(s, start))
            }
        }
    }
}

/// Reads every top-level form of `text`.
pub fn read_all(text: &str) -> Result<Vec<Sexpr>, ParseError> {
    let mut r = Reader { chars: text.chars().peekable(), pos: Pos { line: 1, column: 1 } };
    let mut out = Vec::new();
    loop {
        r.skip_blank();
        if r.chars.peek().is_none() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_forms_with_positions() {
        let xs = read_all("; header\n(a (b c)\n  d)\nx").unwrap();
        assert_eq!(xs.len(), 2);
        assert_eq!(xs[0].pos(), Pos { line: 2, column: 1 });
        assert_eq!(xs[0].to_string(), "(a (b c) d)");
        assert_eq!(xs[1].pos(), Pos { line: 4, column: 1 });
    }

    #[test]
    fn unclosed_list_reports_where_input_ends() {
        let e = read_all("(a\n (b)").unwrap_err();
        assert_eq!(e.pos, Pos { line: 2, column: 5 });
        assert_eq!(e.expected, vec![")".to_string()]);
    }

    #[test]
    fn stray_close_paren() {
        let e = read_all("(a))").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, column: 4 });
    }

    #[test]
    fn empty_input() {
        assert!(read_all("  ; nothing\n").unwrap().is_empty());
    }
}
