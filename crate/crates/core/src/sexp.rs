//! Minimal S-expression reader shared by the tree and formula formats.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {pos}: {msg}")]
pub struct SexpError {
    pub pos: usize,
    pub msg: String,
}

impl SexpError {
    pub fn new(pos: usize, msg: impl Into<String>) -> Self {
        SexpError { pos, msg: msg.into() }
    }
}

/// An atom or a parenthesised list, each tagged with its byte offset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom { text: String, pos: usize },
    List { items: Vec<Sexp>, pos: usize },
}

impl Sexp {
    pub fn pos(&self) -> usize {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, .. } => Some(text),
            Sexp::List { .. } => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List { items, .. } => Some(items),
            Sexp::Atom { .. } => None,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Atom { text, .. } => f.write_str(text),
            Sexp::List { items, .. } => {
                f.write_str("(")?;
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Parses every top-level expression in `input`. `;` starts a line comment.
pub fn parse_all(input: &str) -> Result<Vec<Sexp>, SexpError> {
    let bytes = input.as_bytes();
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
                continue;
            }
            b'(' => stack.push((i, Vec::new())),
            b')' => {
                let (pos, items) = stack.pop().ok_or_else(|| SexpError::new(i, "unbalanced ')'"))?;
                let node = Sexp::List { items, pos };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
            }
            c if c.is_ascii_whitespace() => {}
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'(' | b')' | b';') {
                    i += 1;
                }
                let node = Sexp::Atom { text: input[start..i].to_string(), pos: start };
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(node),
                    None => top.push(node),
                }
                continue;
            }
        }
        i += 1;
    }
    if let Some((pos, _)) = stack.last() {
        return Err(SexpError::new(*pos, "unclosed '('"));
    }
    Ok(top)
}

/// Parses exactly one top-level expression.
pub fn parse_one(input: &str) -> Result<Sexp, SexpError> {
    let mut all = parse_all(input)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        0 => Err(SexpError::new(0, "empty input")),
        _ => Err(SexpError::new(all[1].pos(), "trailing input after expression")),
    }
}
