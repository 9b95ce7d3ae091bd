use std::collections::{BTreeMap, HashMap};

use super::intern::{self, Atomic, TypeKey};
use super::HintikkaError;
use crate::logic::worker_count;
use crate::structures::{NodeId, PlaneCTree};

/// Interned fingerprint of a rank-`depth` type. Ids are stable within one process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HintikkaTypeId {
    pub depth: u32,
    pub id: u32,
}

impl HintikkaTypeId {
    /// The depth-`(d-1)` type (constant budget `d-1`) implied by this one.
    pub fn restrict(&self) -> Option<HintikkaTypeId> {
        self.restrict_to(self.depth.checked_sub(1)?)
    }

    pub fn restrict_to(&self, depth: u32) -> Option<HintikkaTypeId> {
        (depth <= self.depth)
            .then(|| HintikkaTypeId { depth, id: intern::truncate(self.id, depth, depth, &mut HashMap::new()) })
    }

    /// Nested S-expression of the fingerprint, stable across runs.
    pub fn fingerprint(&self) -> String {
        let mut out = String::new();
        intern::dump(self.id, &mut out);
        out
    }
}

fn push_unique(out: &mut Vec<NodeId>, v: NodeId) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// Nodes whose extension types can differ from a generic child's at the last level.
fn special_nodes(t: &PlaneCTree, tuple: &[NodeId], b: u32) -> Vec<NodeId> {
    let tree = t.tree();
    let mut base: Vec<NodeId> = tuple.to_vec();
    base.extend((1..=b).filter_map(|i| t.constant(i)));
    let mut out = Vec::with_capacity(base.len() * 4);
    for &x in &base {
        push_unique(&mut out, x);
        for y in [tree.parent(x), tree.prev_sibling(x), tree.next_sibling(x)].into_iter().flatten() {
            push_unique(&mut out, y);
        }
    }
    out
}

/// Extension candidates for a local type. When `last` is set, children of a
/// tuple element that are not special are collapsed to one per color.
fn local_extensions(t: &PlaneCTree, tuple: &[NodeId], b: u32, last: bool, out: &mut Vec<NodeId>) {
    let tree = t.tree();
    out.clear();
    if !last {
        for &a in tuple {
            out.extend(tree.parent(a));
            out.extend(tree.prev_sibling(a));
            out.extend(tree.next_sibling(a));
            out.extend_from_slice(tree.children(a));
        }
        out.sort_unstable();
        out.dedup();
        return;
    }
    let special = special_nodes(t, tuple, b);
    for &a in tuple {
        for y in [tree.parent(a), tree.prev_sibling(a), tree.next_sibling(a)].into_iter().flatten() {
            push_unique(out, y);
        }
        let kids = tree.children(a);
        let mut special_kids = 0;
        for &s in &special {
            if tree.parent(s) == Some(a) {
                special_kids += 1;
                push_unique(out, s);
            }
        }
        if kids.len() == special_kids {
            continue;
        }
        if t.colors().is_none() {
            if let Some(&g) = kids.iter().find(|k| !special.contains(k)) {
                push_unique(out, g);
            }
        } else {
            let mut seen_colors = Vec::new();
            for &k in kids {
                if !special.contains(&k) && !seen_colors.contains(&t.color(k)) {
                    seen_colors.push(t.color(k));
                    push_unique(out, k);
                }
            }
        }
    }
}

fn local_rec(t: &PlaneCTree, tuple: &mut Vec<NodeId>, q: u32, b: u32) -> u32 {
    let atomic = Atomic::of(t, tuple, b);
    let mut children = Vec::new();
    if q > 0 {
        let mut ext = Vec::new();
        local_extensions(t, tuple, b, q == 1, &mut ext);
        children.reserve(ext.len());
        for w in ext {
            tuple.push(w);
            children.push(local_rec(t, tuple, q - 1, b));
            tuple.pop();
        }
    }
    intern::intern(TypeKey { local: true, q, atomic, children })
}

/// Local type of a tuple at quantifier rank `q` with constant budget `budget`.
pub fn local_tuple_type(t: &PlaneCTree, tuple: &[NodeId], q: u32, budget: u32) -> u32 {
    local_rec(t, &mut tuple.to_vec(), q, budget)
}

/// The `d`-Hintikka type of `v`: rank `d`, constants `c_1..c_d`.
pub fn local_type(t: &PlaneCTree, v: NodeId, d: u32) -> HintikkaTypeId {
    HintikkaTypeId { depth: d, id: local_tuple_type(t, &[v], d, d) }
}

/// Unoptimized reference recursion over all Gaifman neighbours.
pub fn local_type_reference(t: &PlaneCTree, v: NodeId, d: u32) -> HintikkaTypeId {
    fn go(t: &PlaneCTree, tuple: &mut Vec<NodeId>, q: u32, b: u32) -> u32 {
        let atomic = Atomic::of(t, tuple, b);
        let mut children = Vec::new();
        if q > 0 {
            let mut ext = Vec::new();
            local_extensions(t, tuple, b, false, &mut ext);
            for w in ext {
                tuple.push(w);
                children.push(go(t, tuple, q - 1, b));
                tuple.pop();
            }
        }
        intern::intern(TypeKey { local: true, q, atomic, children })
    }
    HintikkaTypeId { depth: d, id: go(t, &mut vec![v], d, d) }
}

fn global_rec(t: &PlaneCTree, tuple: &mut Vec<NodeId>, q: u32, b: u32) -> u32 {
    let atomic = Atomic::of(t, tuple, b);
    let mut children = Vec::new();
    if q > 0 {
        for w in 0..t.len() {
            tuple.push(w);
            children.push(global_rec(t, tuple, q - 1, b));
            tuple.pop();
        }
    }
    intern::intern(TypeKey { local: false, q, atomic, children })
}

/// Rank-`d` type of the whole structure (global one-point extensions).
pub fn structure_type(t: &PlaneCTree, d: u32) -> HintikkaTypeId {
    HintikkaTypeId { depth: d, id: global_rec(t, &mut Vec::new(), d, d) }
}

/// Default work limit for [`structure_equivalent_d`].
pub const DEFAULT_EF_BUDGET: u128 = 1 << 32;

/// Whether `s` and `s2` satisfy the same `d`-sentences (constants `c_1..c_d`).
pub fn structure_equivalent_d(s: &PlaneCTree, s2: &PlaneCTree, d: u32, budget: u128) -> Result<bool, HintikkaError> {
    let cost = (s.len() as u128 * s2.len() as u128).checked_pow(d);
    match cost {
        Some(c) if c <= budget => Ok(structure_type(s, d) == structure_type(s2, d)),
        _ => Err(HintikkaError::BudgetExceeded { estimate: cost, budget }),
    }
}

/// Types of all nodes, computed in parallel; index `v` holds the type of node `v`.
pub fn local_types(t: &PlaneCTree, d: u32) -> Vec<HintikkaTypeId> {
    let n = t.len();
    let workers = worker_count().min(n).max(1);
    if workers == 1 || n < 64 {
        return (0..n).map(|v| local_type(t, v, d)).collect();
    }
    let mut out = vec![HintikkaTypeId { depth: d, id: 0 }; n];
    std::thread::scope(|scope| {
        let chunk = n.div_ceil(workers);
        for (i, slice) in out.chunks_mut(chunk).enumerate() {
            scope.spawn(move || {
                for (j, slot) in slice.iter_mut().enumerate() {
                    *slot = local_type(t, i * chunk + j, d);
                }
            });
        }
    });
    out
}

/// Per-type node counts, optionally truncated at `gamma`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub depth: u32,
    pub counts: BTreeMap<HintikkaTypeId, usize>,
    pub truncation: Option<usize>,
}

impl TypeCensus {
    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn count(&self, ty: HintikkaTypeId) -> usize {
        self.counts.get(&ty).copied().unwrap_or(0)
    }

    pub fn is_truncated(&self, ty: HintikkaTypeId) -> bool {
        self.truncation.is_some_and(|g| self.count(ty) >= g)
    }

    /// Counts of at least `gamma` collapse to `gamma`, read as "at least gamma".
    pub fn truncated(&self, gamma: usize) -> TypeCensus {
        let gamma = self.truncation.map_or(gamma, |g| g.min(gamma));
        TypeCensus {
            depth: self.depth,
            counts: self.counts.iter().map(|(&k, &c)| (k, c.min(gamma))).collect(),
            truncation: Some(gamma),
        }
    }

    /// CSV with columns `type_id, depth, count, truncated_flag`. `label` maps interned ids to printed ids.
    pub fn to_csv(&self, label: &dyn Fn(HintikkaTypeId) -> String) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["type_id", "depth", "count", "truncated_flag"]).expect("in-memory write");
        let mut rows: Vec<_> = self.counts.iter().map(|(&k, &c)| (label(k), c, self.is_truncated(k))).collect();
        rows.sort();
        for (l, c, tr) in rows {
            w.write_record([l, self.depth.to_string(), c.to_string(), u8::from(tr).to_string()])
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

pub fn type_census(t: &PlaneCTree, d: u32) -> TypeCensus {
    let mut counts = BTreeMap::new();
    for ty in local_types(t, d) {
        *counts.entry(ty).or_insert(0) += 1;
    }
    TypeCensus { depth: d, counts, truncation: None }
}

/// True iff every `depth`-type has equal counts in both trees or at least `gamma` in both.
pub fn hanf_predict(s: &PlaneCTree, s2: &PlaneCTree, depth: u32, gamma: usize) -> bool {
    let (a, b) = (type_census(s, depth), type_census(s2, depth));
    a.counts.keys().chain(b.counts.keys()).all(|&ty| {
        let (x, y) = (a.count(ty), b.count(ty));
        x == y || (x >= gamma && y >= gamma)
    })
}

/// `(10d + 12)^(d - l + 1)`, or `None` when it does not fit in 128 bits or `l > d`.
pub fn beta(d: u32, l: u32) -> Option<u128> {
    (l <= d).then(|| (10 * u128::from(d) + 12).checked_pow(d - l + 1)).flatten()
}

/// Deterministic labels: types numbered by first occurrence in the given order.
#[derive(Debug, Default, Clone)]
pub struct TypeLabels {
    map: HashMap<HintikkaTypeId, usize>,
}

impl TypeLabels {
    pub fn label(&mut self, ty: HintikkaTypeId) -> usize {
        let next = self.map.len();
        *self.map.entry(ty).or_insert(next)
    }

    pub fn get(&self, ty: HintikkaTypeId) -> Option<usize> {
        self.map.get(&ty).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::PlaneTree;

    fn star(leaves: usize) -> PlaneCTree {
        let mut ch = vec![(1..=leaves).collect::<Vec<_>>()];
        ch.extend((0..leaves).map(|_| Vec::new()));
        PlaneTree::from_children(ch).unwrap().into()
    }

    fn path(n: usize) -> PlaneCTree {
        let ch = (0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect();
        PlaneTree::from_children(ch).unwrap().into()
    }

    #[test]
    fn ends_of_a_path_differ() {
        let t = path(3);
        assert_ne!(local_type(&t, 0, 1), local_type(&t, 2, 1));
    }

    #[test]
    fn depth_zero_is_trivial() {
        let t = path(4);
        let ids: Vec<_> = (0..4).map(|v| local_type(&t, v, 0)).collect();
        assert!(ids.iter().all(|&i| i == ids[0]));
    }

    #[test]
    fn star_census_at_depth_one() {
        let t = star(5);
        let c = type_census(&t, 1);
        let mut counts: Vec<_> = c.counts.values().copied().collect();
        counts.sort();
        assert_eq!(counts, vec![1, 1, 1, 3]);
        assert_eq!(c.total(), 6);
        assert_eq!(local_type(&t, 2, 1), local_type(&t, 4, 1));
    }

    #[test]
    fn optimized_matches_reference() {
        let t = star(7);
        for d in 0..=3 {
            for v in 0..t.len() {
                assert_eq!(local_type(&t, v, d), local_type_reference(&t, v, d));
            }
        }
    }

    #[test]
    fn restriction_refines() {
        let t = path(6);
        for v in 0..6 {
            assert_eq!(local_type(&t, v, 2).restrict(), Some(local_type(&t, v, 1)));
            assert_eq!(local_type(&t, v, 1).restrict(), Some(local_type(&t, v, 0)));
        }
    }

    #[test]
    fn structure_equivalence_examples() {
        assert!(structure_equivalent_d(&star(10), &star(11), 1, DEFAULT_EF_BUDGET).unwrap());
        assert!(!structure_equivalent_d(&path(2), &path(3), 2, DEFAULT_EF_BUDGET).unwrap());
        assert!(structure_equivalent_d(&path(5), &path(5), 3, DEFAULT_EF_BUDGET).unwrap());
        assert!(structure_equivalent_d(&path(50), &path(50), 3, 10).is_err());
    }

    #[test]
    fn hanf_star_vs_path() {
        assert!(!hanf_predict(&star(3), &path(4), 1, 10));
        assert!(hanf_predict(&star(30), &star(31), 1, 10));
    }

    #[test]
    fn beta_table() {
        assert_eq!(beta(0, 0), Some(12));
        assert_eq!(beta(1, 0), Some(22 * 22));
        assert_eq!(beta(1, 2), None);
    }

    #[test]
    fn truncated_census_caps_counts() {
        let c = type_census(&star(5), 1).truncated(2);
        assert_eq!(c.counts.values().copied().max(), Some(2));
        assert!(c.to_csv(&|t| t.id.to_string()).starts_with("type_id,depth,count,truncated_flag\n"));
    }
}
