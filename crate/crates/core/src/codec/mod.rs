//! Interpretation schemes and the codecs built on them: colored plane forests
//! as plane trees, path decompositions as interval graphs, and interval graphs
//! as colored plane trees of bounded depth.

mod forest;
mod interval;
mod pw;
mod pw_formulas;
mod scheme;

use thiserror::Error;

use crate::logic::LogicError;
use crate::structures::{NodeId, StructureError};

pub use forest::{forest_decode, forest_encode};
pub use interval::{interval_to_pd, pd_to_interval};
pub use pw::{
    association_violations, color_index, depth, pw_decode_direct, pw_encode, pw_encode_randomized, pw_identify,
    witness_pairs, PwTree, Triple, LEFT, MAX_PALETTE, RIGHT,
};
pub use pw_formulas::{pw_formulas, pw_scheme, PwFormulas};
pub use scheme::{apply_interpretation, forest_scheme, InterpretationScheme, Interpreted, RelationDef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("not in the image of the encoder: {0}")]
    NotInImage(String),
    #[error("malformed path-width tree: {0}")]
    Malformed(String),
    #[error("node {0} carries an unmatched right marker")]
    UnmatchedRight(NodeId),
    #[error("node {0} carries an unmatched left marker")]
    UnmatchedLeft(NodeId),
    #[error("ambiguous identification at node {0}")]
    Ambiguous(NodeId),
    #[error("palette of size {0} exceeds the supported maximum")]
    PaletteTooLarge(usize),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}
