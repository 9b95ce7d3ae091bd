use std::collections::BTreeSet;
use std::fmt;

use super::LogicError;
use crate::sexp::{self, Sexp};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    /// The constant `c_i`, `i >= 1`.
    Const(u32),
}

/// First-order formula over `parnt`, `succ`, colors and equality.
///
/// `ExistsN { var, anchor, .. }` lets `var` range over the Gaifman
/// neighbours of the node bound to `anchor`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// `parnt(x, y)`: `x` is a child of `y`.
    Parnt(Term, Term),
    /// `succ(x, y)`: `y` immediately follows `x` among siblings.
    Succ(Term, Term),
    Color(u32, Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Exists(String, Box<Formula>),
    Forall(String, Box<Formula>),
    ExistsN {
        var: String,
        anchor: String,
        body: Box<Formula>,
    },
    ForallN {
        var: String,
        anchor: String,
        body: Box<Formula>,
    },
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }
}

impl Formula {
    pub fn negate(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Forall(var.to_string(), Box::new(body))
    }

    pub fn exists_n(var: &str, anchor: &str, body: Formula) -> Formula {
        Formula::ExistsN { var: var.to_string(), anchor: anchor.to_string(), body: Box::new(body) }
    }

    pub fn forall_n(var: &str, anchor: &str, body: Formula) -> Formula {
        Formula::ForallN { var: var.to_string(), anchor: anchor.to_string(), body: Box::new(body) }
    }

    fn subformulas(&self) -> Vec<&Formula> {
        match self {
            Formula::Parnt(..) | Formula::Succ(..) | Formula::Color(..) | Formula::Eq(..) => vec![],
            Formula::Not(f) => vec![f],
            Formula::And(fs) | Formula::Or(fs) => fs.iter().collect(),
            Formula::Implies(a, b) => vec![a, b],
            Formula::Exists(_, f) | Formula::Forall(_, f) => vec![f],
            Formula::ExistsN { body, .. } | Formula::ForallN { body, .. } => vec![body],
        }
    }

    fn terms(&self) -> Vec<&Term> {
        match self {
            Formula::Parnt(a, b) | Formula::Succ(a, b) | Formula::Eq(a, b) => vec![a, b],
            Formula::Color(_, t) => vec![t],
            _ => vec![],
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Exists(..) | Formula::Forall(..) | Formula::ExistsN { .. } | Formula::ForallN { .. })
    }

    /// Maximum nesting of quantifiers of either kind.
    pub fn quantifier_depth(&self) -> usize {
        let inner = self.subformulas().into_iter().map(Formula::quantifier_depth).max().unwrap_or(0);
        inner + usize::from(self.is_quantifier())
    }

    /// Largest `i` with `c_i` occurring in the formula, or 0.
    pub fn max_constant_index(&self) -> u32 {
        let here = self
            .terms()
            .into_iter()
            .filter_map(|t| match t {
                Term::Const(i) => Some(*i),
                Term::Var(_) => None,
            })
            .max()
            .unwrap_or(0);
        self.subformulas().into_iter().map(Formula::max_constant_index).fold(here, u32::max)
    }

    /// True when every quantifier is neighbour-restricted.
    pub fn is_local(&self) -> bool {
        !matches!(self, Formula::Exists(..) | Formula::Forall(..))
            && self.subformulas().into_iter().all(Formula::is_local)
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            let see = |name: &String, bound: &Vec<String>, out: &mut Vec<String>| {
                if !bound.contains(name) && !out.contains(name) {
                    out.push(name.clone());
                }
            };
            for t in f.terms() {
                if let Term::Var(x) = t {
                    see(x, bound, out);
                }
            }
            match f {
                Formula::Exists(v, body) | Formula::Forall(v, body) => {
                    bound.push(v.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                Formula::ExistsN { var, anchor, body } | Formula::ForallN { var, anchor, body } => {
                    see(anchor, bound, out);
                    bound.push(var.clone());
                    go(body, bound, out);
                    bound.pop();
                }
                _ => {
                    for g in f.subformulas() {
                        go(g, bound, out);
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Checks scoping against a declared set of free variables.
    pub fn check_scope(&self, declared: &[String]) -> Result<(), LogicError> {
        fn go(f: &Formula, scope: &mut Vec<String>) -> Result<(), LogicError> {
            for t in f.terms() {
                if let Term::Var(x) = t {
                    if !scope.contains(x) {
                        return Err(LogicError::UnboundVariable(x.clone()));
                    }
                }
            }
            match f {
                Formula::Exists(v, body) | Formula::Forall(v, body) => {
                    scope.push(v.clone());
                    let r = go(body, scope);
                    scope.pop();
                    r
                }
                Formula::ExistsN { var, anchor, body } | Formula::ForallN { var, anchor, body } => {
                    if !scope.contains(anchor) {
                        return Err(LogicError::UnboundAnchor(anchor.clone()));
                    }
                    scope.push(var.clone());
                    let r = go(body, scope);
                    scope.pop();
                    r
                }
                _ => f.subformulas().into_iter().try_for_each(|g| go(g, scope)),
            }
        }
        go(self, &mut declared.to_vec())
    }

    /// All variable names, bound or free.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in self.terms() {
            if let Term::Var(x) = t {
                out.insert(x.clone());
            }
        }
        match self {
            Formula::Exists(v, _) | Formula::Forall(v, _) => {
                out.insert(v.clone());
            }
            Formula::ExistsN { var, anchor, .. } | Formula::ForallN { var, anchor, .. } => {
                out.insert(var.clone());
                out.insert(anchor.clone());
            }
            _ => {}
        }
        for g in self.subformulas() {
            out.extend(g.variables());
        }
        out
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::Const(i) => write!(f, "(const {i})"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, head: &str, fs: &[Formula]| {
            write!(f, "({head}")?;
            for g in fs {
                write!(f, " {g}")?;
            }
            write!(f, ")")
        };
        match self {
            Formula::Parnt(a, b) => write!(f, "(parnt {a} {b})"),
            Formula::Succ(a, b) => write!(f, "(succ {a} {b})"),
            Formula::Color(k, t) => write!(f, "(color {k} {t})"),
            Formula::Eq(a, b) => write!(f, "(= {a} {b})"),
            Formula::Not(g) => write!(f, "(not {g})"),
            Formula::And(fs) => list(f, "and", fs),
            Formula::Or(fs) => list(f, "or", fs),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Exists(v, g) => write!(f, "(exists {v} {g})"),
            Formula::Forall(v, g) => write!(f, "(forall {v} {g})"),
            Formula::ExistsN { var, anchor, body } => write!(f, "(existsN {var} {anchor} {body})"),
            Formula::ForallN { var, anchor, body } => write!(f, "(forallN {var} {anchor} {body})"),
        }
    }
}

const KEYWORDS: &[&str] =
    &["parnt", "succ", "color", "=", "not", "and", "or", "implies", "exists", "forall", "existsN", "forallN", "const"];

fn syntax(pos: usize, msg: impl Into<String>) -> LogicError {
    LogicError::Syntax { pos, msg: msg.into() }
}

fn parse_var(s: &Sexp) -> Result<String, LogicError> {
    match s.as_atom() {
        Some(a) if !KEYWORDS.contains(&a) && a.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_') => {
            Ok(a.to_string())
        }
        _ => Err(syntax(s.pos(), "expected a variable name")),
    }
}

fn parse_index(s: &Sexp) -> Result<u32, LogicError> {
    s.as_atom().and_then(|a| a.parse::<u32>().ok()).ok_or_else(|| syntax(s.pos(), "expected a non-negative integer"))
}

fn parse_term(s: &Sexp) -> Result<Term, LogicError> {
    if let Some(items) = s.as_list() {
        return match items {
            [head, i] if head.as_atom() == Some("const") => match parse_index(i)? {
                0 => Err(syntax(i.pos(), "constant indices start at 1")),
                i => Ok(Term::Const(i)),
            },
            _ => Err(syntax(s.pos(), "expected a variable or (const I)")),
        };
    }
    parse_var(s).map(Term::Var)
}

fn from_sexp(s: &Sexp) -> Result<Formula, LogicError> {
    let items = s.as_list().ok_or_else(|| syntax(s.pos(), "expected '(' to open a formula"))?;
    let (head, args) = items.split_first().ok_or_else(|| syntax(s.pos(), "empty formula"))?;
    let head_name = head.as_atom().ok_or_else(|| syntax(head.pos(), "expected an operator"))?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(syntax(s.pos(), format!("'{head_name}' takes {n} arguments, got {}", args.len())))
        }
    };
    let boxed = |a: &Sexp| from_sexp(a).map(Box::new);
    Ok(match head_name {
        "parnt" | "succ" | "=" => {
            arity(2)?;
            let (a, b) = (parse_term(&args[0])?, parse_term(&args[1])?);
            match head_name {
                "parnt" => Formula::Parnt(a, b),
                "succ" => Formula::Succ(a, b),
                _ => Formula::Eq(a, b),
            }
        }
        "color" => {
            arity(2)?;
            Formula::Color(parse_index(&args[0])?, parse_term(&args[1])?)
        }
        "not" => {
            arity(1)?;
            Formula::Not(boxed(&args[0])?)
        }
        "and" | "or" => {
            if args.is_empty() {
                return Err(syntax(s.pos(), format!("'{head_name}' needs at least one argument")));
            }
            let fs = args.iter().map(from_sexp).collect::<Result<Vec<_>, _>>()?;
            if head_name == "and" {
                Formula::And(fs)
            } else {
                Formula::Or(fs)
            }
        }
        "implies" => {
            arity(2)?;
            Formula::Implies(boxed(&args[0])?, boxed(&args[1])?)
        }
        "exists" | "forall" => {
            arity(2)?;
            let v = parse_var(&args[0])?;
            let body = boxed(&args[1])?;
            if head_name == "exists" {
                Formula::Exists(v, body)
            } else {
                Formula::Forall(v, body)
            }
        }
        "existsN" | "forallN" => {
            arity(3)?;
            let var = parse_var(&args[0])?;
            let anchor = parse_var(&args[1])?;
            if var == anchor {
                return Err(LogicError::UnboundAnchor(anchor));
            }
            let body = boxed(&args[2])?;
            if head_name == "existsN" {
                Formula::ExistsN { var, anchor, body }
            } else {
                Formula::ForallN { var, anchor, body }
            }
        }
        other => return Err(syntax(head.pos(), format!("unknown operator '{other}'"))),
    })
}

/// Parses a formula; variables not bound by a quantifier are free.
pub fn parse_formula(text: &str) -> Result<Formula, LogicError> {
    from_sexp(&sexp::parse_one(text)?)
}

/// Parses a formula whose free variables must all be among `declared`.
pub fn parse_formula_with_free(text: &str, declared: &[String]) -> Result<Formula, LogicError> {
    let f = parse_formula(text)?;
    f.check_scope(declared)?;
    Ok(f)
}
