//! Local Hintikka types, type censuses, k-positions, EF equivalence of
//! structures and Stone-measure estimates.

mod intern;
mod measures;
mod position;
mod types;

use thiserror::Error;

pub use measures::{estimate_from_censuses, estimate_stone_measures, Nu, StoneMeasureEstimate, TypeMeasure};
pub use position::{k_position, word_to_string, Step};
pub use types::{
    beta, hanf_predict, local_tuple_type, local_type, local_type_reference, local_types, structure_equivalent_d,
    structure_type, type_census, HintikkaTypeId, TypeCensus, TypeLabels, DEFAULT_EF_BUDGET,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HintikkaError {
    #[error("game budget exceeded: estimated cost {} > budget {budget}", estimate.map_or("overflow".to_string(), |e| e.to_string()))]
    BudgetExceeded { estimate: Option<u128>, budget: u128 },
}
