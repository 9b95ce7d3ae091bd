//! First-order formulas over plane-tree structures: parsing, printing,
//! evaluation and Stone pairings.

mod eval;
mod formula;
mod structure;

use thiserror::Error;

pub use eval::{evaluate, satisfying_count, stone_pairing, stone_pairing_mc, worker_count, MonteCarlo, Prepared};
pub use formula::{parse_formula, parse_formula_with_free, Formula, Term};
pub use structure::{forest_structure, RelStructure, Structure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("neighbour quantifier anchored at unbound variable '{0}'")]
    UnboundAnchor(String),
    #[error("constant c_{0} is not interpreted")]
    UninterpretedConstant(u32),
    #[error("node {0} out of range")]
    NodeOutOfRange(usize),
    #[error("structure has no nodes")]
    EmptyStructure,
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("tuple space does not fit in 128 bits")]
    TupleSpaceTooLarge,
}

impl From<crate::sexp::SexpError> for LogicError {
    fn from(e: crate::sexp::SexpError) -> Self {
        LogicError::Syntax { pos: e.pos, msg: e.msg }
    }
}
