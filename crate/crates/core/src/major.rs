//! ε-major nodes of plane trees and the constant-annotation schedule built on them.

use std::collections::VecDeque;

use num_rational::Ratio;
use thiserror::Error;

use crate::structures::{NodeId, PlaneCTree, PlaneTree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MajorError {
    #[error("epsilon must lie strictly between 0 and 1, got {0}")]
    BadEpsilon(Ratio<u64>),
    #[error("node {0} is in the removed set")]
    CenterRemoved(NodeId),
    #[error("node {0} out of range")]
    NodeOutOfRange(NodeId),
}

pub fn check_epsilon(eps: Ratio<u64>) -> Result<(), MajorError> {
    if *eps.numer() == 0 || eps >= Ratio::from_integer(1) {
        return Err(MajorError::BadEpsilon(eps));
    }
    Ok(())
}

fn two_largest_sum(components: &[usize]) -> usize {
    let (mut a, mut b) = (0, 0);
    for &c in components {
        if c > a {
            b = a;
            a = c;
        } else if c > b {
            b = c;
        }
    }
    a + b
}

fn is_major(sum2: usize, n: usize, eps: Ratio<u64>) -> bool {
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    sum2 as u128 * den <= (den - num) * n as u128
}

/// Nodes whose two largest components after removal sum to at most `(1 - eps)|T|`.
/// `eps` may be any rational in `[0, 1]` here; callers facing users should use [`check_epsilon`].
pub fn major_nodes(t: &PlaneTree, eps: Ratio<u64>) -> Vec<NodeId> {
    let sizes = t.subtree_sizes();
    let n = t.len();
    (0..n)
        .filter(|&u| {
            let mut comps: Vec<usize> = t.children(u).iter().map(|&c| sizes[c]).collect();
            if t.parent(u).is_some() {
                comps.push(n - sizes[u]);
            }
            is_major(two_largest_sum(&comps), n, eps)
        })
        .collect()
}

/// `ceil(eps^-2)`.
pub fn major_bound(eps: Ratio<u64>) -> u128 {
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    (den * den).div_ceil(num * num)
}

pub fn verify_major_bound(t: &PlaneTree, eps: Ratio<u64>) -> bool {
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    major_nodes(t, eps).len() as u128 * num * num <= den * den
}

/// Number of nodes within distance `r` of `v` in the forest `T - removed` (tree edges only).
pub fn pruned_ball(t: &PlaneTree, removed: &[NodeId], v: NodeId, r: usize) -> Result<usize, MajorError> {
    if v >= t.len() {
        return Err(MajorError::NodeOutOfRange(v));
    }
    let mut blocked = vec![false; t.len()];
    for &u in removed {
        if u >= t.len() {
            return Err(MajorError::NodeOutOfRange(u));
        }
        blocked[u] = true;
    }
    if blocked[v] {
        return Err(MajorError::CenterRemoved(v));
    }
    let mut dist = vec![usize::MAX; t.len()];
    dist[v] = 0;
    let mut queue = VecDeque::from([v]);
    let mut count = 0;
    while let Some(x) = queue.pop_front() {
        count += 1;
        if dist[x] == r {
            continue;
        }
        for y in t.parent(x).into_iter().chain(t.children(x).iter().copied()) {
            if !blocked[y] && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Ok(count)
}

/// True when `ball * den <= (2^(r+1) + 1) * num * n`.
pub fn ball_within_bound(ball: usize, n: usize, eps: Ratio<u64>, r: u32) -> bool {
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    ball as u128 * den <= ((1u128 << (r + 1)) + 1) * num * n as u128
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MajorReport {
    pub epsilon: Ratio<u64>,
    pub nodes: Vec<NodeId>,
    pub bound: u128,
    pub pass: bool,
}

pub fn major_report(t: &PlaneTree, eps: Ratio<u64>) -> MajorReport {
    let nodes = major_nodes(t, eps);
    let bound = major_bound(eps);
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    let pass = nodes.len() as u128 * num * num <= den * den;
    MajorReport { epsilon: eps, nodes, bound, pass }
}

/// CSV with columns `tree_index, epsilon, major_count, bound, pass`.
pub fn reports_to_csv(reports: &[(usize, MajorReport)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["tree_index", "epsilon", "major_count", "bound", "pass"]).expect("in-memory write");
    for (i, r) in reports {
        w.write_record([
            i.to_string(),
            r.epsilon.to_string(),
            r.nodes.len().to_string(),
            r.bound.to_string(),
            r.pass.to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

/// ε used at annotation step `k`: `2^-k`.
pub fn stage_epsilon(k: u32) -> Ratio<u64> {
    Ratio::new(1, 1u64 << k)
}

/// Constants `c_lo..=c_hi` filled at step `k`: `c_1..c_2` for `k = 0`, then
/// `c_(2^(2k-1)+1)..c_(2^(2k+1))`.
pub fn stage_block(k: u32) -> (u32, u32) {
    let lo = if k == 0 { 1 } else { (1u32 << (2 * k - 1)) + 1 };
    (lo, 1u32 << (2 * k + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub trees: Vec<PlaneCTree>,
    /// `(tree index, step)` pairs skipped because the tree was too small.
    pub skipped: Vec<(usize, u32)>,
}

/// Runs steps `0..=stages` of the schedule on every tree (nothing for `stages = 0`).
/// After the run every `2^-stages`-major node of an annotated tree is a constant.
pub fn annotate_constants(sequence: &[PlaneTree], stages: u32) -> Annotation {
    let mut trees = Vec::with_capacity(sequence.len());
    let mut skipped = Vec::new();
    for (i, t) in sequence.iter().enumerate() {
        let mut ct = PlaneCTree::new(t.clone());
        if stages > 0 {
            let order = t.preorder();
            for k in 0..=stages {
                let (lo, hi) = stage_block(k);
                if t.len() < hi as usize {
                    skipped.extend((k..=stages).map(|s| (i, s)));
                    break;
                }
                let mut next = lo;
                for u in major_nodes(t, stage_epsilon(k)) {
                    if ct.constant_index(u).is_none() {
                        assert!(next <= hi, "more majors than the constant block holds");
                        ct.set_constant(next, u).expect("fresh constant on a free node");
                        next += 1;
                    }
                }
                let free: Vec<NodeId> = order.iter().copied().filter(|&v| ct.constant_index(v).is_none()).collect();
                let mut free = free.into_iter();
                while next <= hi {
                    let v = free.next().expect("tree has enough nodes for the block");
                    ct.set_constant(next, v).expect("fresh constant on a free node");
                    next += 1;
                }
            }
        }
        trees.push(ct);
    }
    Annotation { trees, skipped }
}

/// Direct definition: delete each node and measure components. Quadratic.
pub fn major_nodes_brute_force(t: &PlaneTree, eps: Ratio<u64>) -> Vec<NodeId> {
    (0..t.len()).filter(|&u| is_major(two_largest_sum(&t.components_after_removal(u)), t.len(), eps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn star(leaves: usize) -> PlaneTree {
        let mut ch = vec![(1..=leaves).collect::<Vec<_>>()];
        ch.extend((0..leaves).map(|_| Vec::new()));
        PlaneTree::from_children(ch).unwrap()
    }

    fn path(n: usize) -> PlaneTree {
        PlaneTree::from_children((0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect()).unwrap()
    }

    #[test]
    fn star_center_is_the_half_major() {
        assert_eq!(major_nodes(&star(5), Ratio::new(1, 2)), vec![0]);
    }

    #[test]
    fn path_boundary_cases() {
        assert!(major_nodes(&path(11), Ratio::new(1, 10)).is_empty());
        assert_eq!(major_nodes(&path(10), Ratio::new(1, 10)).len(), 10);
        assert!(verify_major_bound(&path(10), Ratio::new(1, 10)));
        assert_eq!(major_nodes(&PlaneTree::single(), Ratio::new(1, 3)), vec![0]);
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(major_bound(Ratio::new(1, 2)), 4);
        assert_eq!(major_bound(Ratio::new(9, 10)), 2);
        assert_eq!(major_bound(Ratio::new(1, 10)), 100);
    }

    #[test]
    fn balls() {
        let p = path(10);
        assert_eq!(pruned_ball(&p, &[], 0, 3), Ok(4));
        let others: Vec<_> = (1..10).collect();
        assert_eq!(pruned_ball(&p, &others, 0, 5), Ok(1));
        assert_eq!(pruned_ball(&p, &[0], 0, 1), Err(MajorError::CenterRemoved(0)));
    }

    #[test]
    fn blocks_are_contiguous() {
        assert_eq!(stage_block(0), (1, 2));
        assert_eq!(stage_block(1), (3, 8));
        assert_eq!(stage_block(2), (9, 32));
    }

    #[test]
    fn annotation_puts_star_centers_on_constants() {
        let seq: Vec<_> = (10..15).map(star).collect();
        let ann = annotate_constants(&seq, 1);
        assert!(ann.skipped.is_empty());
        for t in &ann.trees {
            assert!(t.constant_index(0).is_some());
            assert_eq!(t.constants().len(), 8);
        }
        let ident = annotate_constants(&seq, 0);
        assert!(ident.trees.iter().all(|t| t.constants().is_empty()));
    }

    #[test]
    fn small_trees_are_skipped() {
        let ann = annotate_constants(&[star(4)], 1);
        assert_eq!(ann.skipped, vec![(0, 1)]);
        assert_eq!(ann.trees[0].constants().len(), 2);
    }

    #[test]
    fn epsilon_range() {
        assert!(check_epsilon(Ratio::new(1, 2)).is_ok());
        assert!(check_epsilon(Ratio::new(0, 1)).is_err());
        assert!(check_epsilon(Ratio::new(1, 1)).is_err());
    }
}
