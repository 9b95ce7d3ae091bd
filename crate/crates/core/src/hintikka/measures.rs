use std::collections::BTreeMap;
use std::fmt;

use super::{type_census, HintikkaTypeId, TypeCensus};
use crate::structures::PlaneCTree;

/// Estimated discrete Stone measure of one type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Nu {
    Finite(usize),
    Infinite,
    /// Neither constant nor growing over the tail.
    Unstable,
}

impl fmt::Display for Nu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Nu::Finite(n) => write!(f, "{n}"),
            Nu::Infinite => f.write_str("inf"),
            Nu::Unstable => f.write_str("unstable"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TypeMeasure {
    pub nu: Nu,
    pub mu: f64,
    /// Count of the type in the last structure.
    pub last_count: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StoneMeasureEstimate {
    pub depth: u32,
    pub threshold: usize,
    /// Indices of the sequence used for the estimate.
    pub tail: Vec<usize>,
    pub types: BTreeMap<HintikkaTypeId, TypeMeasure>,
    /// Censuses of every structure of the sequence, in order.
    pub censuses: Vec<TypeCensus>,
}

impl StoneMeasureEstimate {
    pub fn mu_total(&self) -> f64 {
        self.types.values().map(|m| m.mu).sum()
    }

    pub fn infinite_types(&self) -> impl Iterator<Item = (HintikkaTypeId, &TypeMeasure)> {
        self.types.iter().filter(|(_, m)| m.nu == Nu::Infinite).map(|(&t, m)| (t, m))
    }

    /// Types with finite ν̂ but positive μ̂, although the structures grow.
    pub fn mass_inconsistencies(&self) -> Vec<HintikkaTypeId> {
        let sizes: Vec<usize> = self.censuses.iter().map(TypeCensus::total).collect();
        let grows = sizes.windows(2).all(|w| w[1] > w[0]) && sizes.len() > 1;
        if !grows {
            return Vec::new();
        }
        self.types
            .iter()
            .filter(|(_, m)| matches!(m.nu, Nu::Finite(_)) && m.last_count * 100 > sizes[sizes.len() - 1])
            .map(|(&t, _)| t)
            .collect()
    }
}

/// Estimates ν and μ at depth `d` from the tail half of `sequence`.
pub fn estimate_stone_measures(sequence: &[PlaneCTree], d: u32, threshold: usize) -> StoneMeasureEstimate {
    assert!(!sequence.is_empty(), "sequence must be nonempty");
    let censuses: Vec<TypeCensus> = sequence.iter().map(|t| type_census(t, d)).collect();
    estimate_from_censuses(censuses, d, threshold)
}

pub fn estimate_from_censuses(censuses: Vec<TypeCensus>, d: u32, threshold: usize) -> StoneMeasureEstimate {
    let len = censuses.len();
    let tail: Vec<usize> = (len / 2..len).collect();
    let last = &censuses[len - 1];
    let last_size = last.total() as f64;
    let mut types = BTreeMap::new();
    for &i in &tail {
        for &ty in censuses[i].counts.keys() {
            types.entry(ty).or_insert_with(|| {
                let counts: Vec<usize> = tail.iter().map(|&j| censuses[j].count(ty)).collect();
                let nu = if counts.iter().all(|&c| c == counts[0]) {
                    Nu::Finite(counts[0])
                } else if counts[counts.len() - 1] >= threshold || counts.windows(2).all(|w| w[1] > w[0]) {
                    Nu::Infinite
                } else {
                    Nu::Unstable
                };
                let last_count = last.count(ty);
                TypeMeasure { nu, mu: last_count as f64 / last_size, last_count }
            });
        }
    }
    StoneMeasureEstimate { depth: d, threshold, tail, types, censuses }
}
