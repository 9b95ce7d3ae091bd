//! A depth-truncated limit modeling of a convergent sequence of plane c-trees.
//!
//! Nodes are either `(Ψ, i)` with `ν(Ψ)` finite or `(Ψ, h, s, t)` with
//! `ν(Ψ) = ∞` and coordinates in `[0, 1)`. Here `Ψ` is a type of some depth
//! `k ≤ d`; the parent and the successor of a node of depth `k` carry types of
//! depth `k - 1`, which the depth-`k` type determines.

mod frac;

use std::collections::{BTreeMap, BTreeSet};

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use frac::{h_orbit_collision, rotate, rotate_inv, zeta, zeta_inv, Frac64, SQRT2_FRAC};

use crate::hintikka::{local_types, HintikkaTypeId, Nu, StoneMeasureEstimate};
use crate::structures::PlaneCTree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplerError {
    #[error("estimates must cover depths 0..=d in order")]
    DepthGap,
    #[error("reference structure lacks type {0:?} recorded by the estimate")]
    MissingType(HintikkaTypeId),
    #[error("type {0:?} is not in the type tree")]
    UnknownType(HintikkaTypeId),
    #[error("depth exhausted at type {0:?}: no link recorded below depth 0")]
    TruncationBoundary(HintikkaTypeId),
    #[error("no type with infinite discrete measure and positive mass")]
    NoInfiniteType,
    #[error("inconsistent estimate at type {0:?}: {1}")]
    Inconsistent(HintikkaTypeId, String),
}

/// How many children of one type a parent of the linked type has.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

/// Where a parent or successor link of a type leads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Link {
    /// No parent (a root type) or no successor.
    Absent,
    To(HintikkaTypeId),
    /// Depth-0 types do not determine their neighbours.
    Boundary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TypeInfo {
    pub nu: Nu,
    pub mu: f64,
    pub parent: Link,
    pub successor: Link,
    /// Children of this type under one parent, over parents in the reference.
    pub multiplicity: Option<Multiplicity>,
}

/// Types of depths `0..=d` with measures, links and multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeTree {
    pub depth: u32,
    pub threshold: usize,
    pub types: BTreeMap<HintikkaTypeId, TypeInfo>,
    /// Constant index to the depth-`d` type of its node, when that type has `ν = 1`.
    pub constants: BTreeMap<u32, HintikkaTypeId>,
    pub violations: Vec<String>,
}

fn nu_value(nu: Nu) -> Option<u64> {
    match nu {
        Nu::Finite(n) => Some(n as u64),
        Nu::Infinite | Nu::Unstable => None,
    }
}

/// Links every type of `reference` to the types of its parent and successor one
/// level down, and records child multiplicities (`∞` from `threshold` on).
/// `estimates[k]` must be the depth-`k` estimate for `k = 0..=d`.
pub fn build_type_tree(
    estimates: &[StoneMeasureEstimate],
    reference: &PlaneCTree,
    threshold: usize,
) -> Result<TypeTree, SamplerError> {
    if estimates.is_empty() || estimates.iter().enumerate().any(|(k, e)| e.depth as usize != k) {
        return Err(SamplerError::DepthGap);
    }
    let d = estimates.len() as u32 - 1;
    let tree = reference.tree();
    let per_depth: Vec<Vec<HintikkaTypeId>> = (0..=d).map(|k| local_types(reference, k)).collect();
    let mut types = BTreeMap::new();
    let mut violations = Vec::new();
    for (k, est) in estimates.iter().enumerate() {
        let tys = &per_depth[k];
        let present: BTreeSet<HintikkaTypeId> = tys.iter().copied().collect();
        for (&ty, m) in &est.types {
            if m.last_count > 0 && !present.contains(&ty) {
                return Err(SamplerError::MissingType(ty));
            }
        }
        let mut parents: BTreeMap<HintikkaTypeId, BTreeMap<Option<HintikkaTypeId>, usize>> = BTreeMap::new();
        let mut succs: BTreeMap<HintikkaTypeId, BTreeMap<Option<HintikkaTypeId>, usize>> = BTreeMap::new();
        let mut child_counts: BTreeMap<HintikkaTypeId, BTreeMap<usize, usize>> = BTreeMap::new();
        for v in 0..reference.len() {
            let ty = tys[v];
            if k > 0 {
                let below = &per_depth[k - 1];
                *parents.entry(ty).or_default().entry(tree.parent(v).map(|p| below[p])).or_default() += 1;
                *succs.entry(ty).or_default().entry(tree.next_sibling(v).map(|s| below[s])).or_default() += 1;
            }
            let mut under: BTreeMap<HintikkaTypeId, usize> = BTreeMap::new();
            for &c in tree.children(v) {
                *under.entry(tys[c]).or_default() += 1;
            }
            for (cty, n) in under {
                child_counts.entry(cty).or_default().insert(v, n);
            }
        }
        let pick = |ty: HintikkaTypeId,
                    seen: &BTreeMap<HintikkaTypeId, BTreeMap<Option<HintikkaTypeId>, usize>>,
                    what: &str,
                    violations: &mut Vec<String>| {
            if k == 0 {
                return Link::Boundary;
            }
            let Some(options) = seen.get(&ty) else { return Link::Boundary };
            if options.len() > 1 {
                violations.push(format!("{what} of type {ty:?} not determined by the reference"));
            }
            let (&best, _) = options.iter().max_by_key(|(_, &c)| c).expect("type occurs");
            best.map_or(Link::Absent, Link::To)
        };
        for &ty in &present {
            let m = est.types.get(&ty).ok_or(SamplerError::MissingType(ty))?;
            let parent = pick(ty, &parents, "parent", &mut violations);
            let successor = pick(ty, &succs, "successor", &mut violations);
            let multiplicity = child_counts.get(&ty).map(|per_parent| {
                let counts: BTreeSet<usize> = per_parent.values().copied().collect();
                let max = *counts.last().expect("nonempty");
                if max >= threshold {
                    Multiplicity::Infinite
                } else {
                    if counts.len() > 1 {
                        violations.push(format!("type {ty:?} has varying child counts {counts:?}"));
                    }
                    Multiplicity::Finite(max as u64)
                }
            });
            if m.nu == Nu::Unstable {
                violations.push(format!("type {ty:?} has an unstable count"));
            }
            types.insert(ty, TypeInfo { nu: m.nu, mu: m.mu, parent, successor, multiplicity });
        }
    }
    check_consistency(&types, &mut violations);
    let mut constants = BTreeMap::new();
    for (&i, &v) in reference.constants() {
        let ty = per_depth[d as usize][v];
        if types.get(&ty).is_some_and(|t| t.nu == Nu::Finite(1)) {
            constants.insert(i, ty);
        }
    }
    Ok(TypeTree { depth: d, threshold, types, constants, violations })
}

/// Divisibility along parent links where both `ν` are finite, and the successor
/// identity: the types linked to one successor type `Ψ''` of positive depth
/// have `ν` summing to `ν(Ψ'')`.
fn check_consistency(types: &BTreeMap<HintikkaTypeId, TypeInfo>, violations: &mut Vec<String>) {
    let mut into: BTreeMap<HintikkaTypeId, Vec<HintikkaTypeId>> = BTreeMap::new();
    for (&ty, info) in types {
        if let Link::To(p) = info.parent {
            let pn = types.get(&p).and_then(|t| nu_value(t.nu));
            if let (Some(n), Some(pn)) = (nu_value(info.nu), pn) {
                if pn == 0 || n % pn != 0 {
                    violations.push(format!("nu of parent type {p:?} does not divide nu of {ty:?}"));
                }
            }
        }
        if let Link::To(s) = info.successor {
            into.entry(s).or_default().push(ty);
        }
    }
    for (s, preds) in into {
        let Some(target) = types.get(&s).filter(|_| s.depth > 0) else { continue };
        let mut sum = Some(0u64);
        for p in &preds {
            sum = sum.zip(nu_value(types[p].nu)).map(|(a, b)| a + b);
        }
        let ok = match (sum, nu_value(target.nu)) {
            (Some(a), Some(b)) => a == b,
            (None, None) => true,
            _ => false,
        };
        if !ok {
            violations.push(format!("successor counts into type {s:?} do not match its nu"));
        }
    }
}

/// A node of the modeling. `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelingNode {
    Finite { ty: HintikkaTypeId, index: u64 },
    Continuum { ty: HintikkaTypeId, h: Frac64, s: Frac64, t: Frac64 },
}

impl ModelingNode {
    pub fn ty(&self) -> HintikkaTypeId {
        match *self {
            ModelingNode::Finite { ty, .. } | ModelingNode::Continuum { ty, .. } => ty,
        }
    }
}

impl TypeTree {
    pub fn info(&self, ty: HintikkaTypeId) -> Result<&TypeInfo, SamplerError> {
        self.types.get(&ty).ok_or(SamplerError::UnknownType(ty))
    }

    /// The node standing for constant `c_i`, when its type has `ν = 1`.
    pub fn constant_node(&self, i: u32) -> Option<ModelingNode> {
        self.constants.get(&i).map(|&ty| ModelingNode::Finite { ty, index: 1 })
    }

    /// Checks that the node's type is known and its coordinates fit its `ν`.
    pub fn check_node(&self, node: &ModelingNode) -> Result<(), SamplerError> {
        let info = self.info(node.ty())?;
        match (*node, info.nu) {
            (ModelingNode::Finite { index, .. }, Nu::Finite(n)) if index >= 1 && index <= n as u64 => Ok(()),
            (ModelingNode::Continuum { .. }, Nu::Infinite) => Ok(()),
            _ => Err(SamplerError::Inconsistent(node.ty(), "node does not fit the type's nu".into())),
        }
    }

    fn link(&self, ty: HintikkaTypeId, parent: bool) -> Result<Option<HintikkaTypeId>, SamplerError> {
        let info = self.info(ty)?;
        match if parent { info.parent } else { info.successor } {
            Link::Absent => Ok(None),
            Link::To(t) => Ok(Some(t)),
            Link::Boundary => Err(SamplerError::TruncationBoundary(ty)),
        }
    }

    fn finite_nu(&self, ty: HintikkaTypeId) -> Result<Option<u64>, SamplerError> {
        Ok(nu_value(self.info(ty)?.nu))
    }

    /// Parent of `node`, `None` for a root type.
    pub fn parent_of(&self, node: &ModelingNode) -> Result<Option<ModelingNode>, SamplerError> {
        self.check_node(node)?;
        let ty = node.ty();
        let Some(p) = self.link(ty, true)? else { return Ok(None) };
        let pnu = self.finite_nu(p)?;
        Ok(Some(match (*node, pnu) {
            (ModelingNode::Finite { index, .. }, Some(pn)) => {
                let n = self.finite_nu(ty)?.expect("finite node has finite nu");
                ModelingNode::Finite { ty: p, index: (index * pn).div_ceil(n) }
            }
            (ModelingNode::Finite { .. }, None) => {
                return Err(SamplerError::Inconsistent(ty, "finite type under an infinite parent type".into()));
            }
            (ModelingNode::Continuum { t, .. }, Some(pn)) => ModelingNode::Finite { ty: p, index: t.floor_mul(pn) + 1 },
            (ModelingNode::Continuum { h, s, t, .. }, None) => match self.info(ty)?.multiplicity {
                Some(Multiplicity::Finite(m)) => ModelingNode::Continuum { ty: p, h: rotate(h), s: s.scale(m), t },
                _ => {
                    let (s2, t2) = zeta(t);
                    ModelingNode::Continuum { ty: p, h: rotate(h), s: s2, t: t2 }
                }
            },
        }))
    }

    /// Next sibling of `node`, `None` when the type has no successor.
    pub fn successor_of(&self, node: &ModelingNode) -> Result<Option<ModelingNode>, SamplerError> {
        self.check_node(node)?;
        let ty = node.ty();
        let Some(next) = self.link(ty, false)? else { return Ok(None) };
        let next_nu = self.finite_nu(next)?;
        Ok(Some(match (*node, next_nu) {
            (ModelingNode::Finite { index, .. }, Some(n)) if index <= n => ModelingNode::Finite { ty: next, index },
            (ModelingNode::Continuum { h, s, t, .. }, None) => {
                let finitary = match self.link(ty, true)? {
                    Some(p) => {
                        self.finite_nu(p)?.is_none()
                            && matches!(self.info(ty)?.multiplicity, Some(Multiplicity::Finite(_)))
                    }
                    None => false,
                };
                let s = if finitary { s } else { s + SQRT2_FRAC };
                ModelingNode::Continuum { ty: next, h, s, t }
            }
            _ => return Err(SamplerError::Inconsistent(ty, "successor type has a different nu".into())),
        }))
    }

    /// Types of depth `d` with `ν = ∞` and their weights `μ`.
    fn infinite_top_types(&self) -> Vec<(HintikkaTypeId, f64)> {
        self.types
            .iter()
            .filter(|(ty, info)| ty.depth == self.depth && info.nu == Nu::Infinite && info.mu > 0.0)
            .map(|(&ty, info)| (ty, info.mu))
            .collect()
    }

    /// Draws a node of the continuum part: the type by `μ` restricted to
    /// infinite types of depth `d`, the coordinates uniformly.
    pub fn sample_node<R: Rng>(&self, rng: &mut R) -> Result<ModelingNode, SamplerError> {
        let tops = self.infinite_top_types();
        if tops.is_empty() {
            return Err(SamplerError::NoInfiniteType);
        }
        let dist = WeightedIndex::new(tops.iter().map(|&(_, w)| w)).map_err(|_| SamplerError::NoInfiniteType)?;
        let ty = tops[dist.sample(rng)].0;
        Ok(ModelingNode::Continuum { ty, h: Frac64(rng.gen()), s: Frac64(rng.gen()), t: Frac64(rng.gen()) })
    }

    /// [`TypeTree::sample_node`] from a fresh seeded stream.
    pub fn sample_node_seeded(&self, seed: u64) -> Result<ModelingNode, SamplerError> {
        self.sample_node(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Frequencies of depth-`depth` types among `samples` sampled nodes.
    pub fn empirical_type_distribution(
        &self,
        depth: u32,
        samples: usize,
        seed: u64,
    ) -> Result<BTreeMap<HintikkaTypeId, f64>, SamplerError> {
        assert!(depth < self.depth, "comparison depth must lie below the truncation depth");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts: BTreeMap<HintikkaTypeId, usize> = BTreeMap::new();
        let mut cache: BTreeMap<HintikkaTypeId, HintikkaTypeId> = BTreeMap::new();
        for _ in 0..samples {
            let ty = self.sample_node(&mut rng)?.ty();
            let low = *cache.entry(ty).or_insert_with(|| ty.restrict_to(depth).expect("lower depth"));
            *counts.entry(low).or_default() += 1;
        }
        Ok(counts.into_iter().map(|(ty, c)| (ty, c as f64 / samples as f64)).collect())
    }
}

/// One row per type: `(type, μ̂, empirical frequency, |difference|)`, over the
/// union of types in the estimate and the sample.
pub fn compare_distribution(
    estimate: &StoneMeasureEstimate,
    empirical: &BTreeMap<HintikkaTypeId, f64>,
) -> Vec<(HintikkaTypeId, f64, f64, f64)> {
    let keys: BTreeSet<HintikkaTypeId> = estimate.types.keys().chain(empirical.keys()).copied().collect();
    keys.into_iter()
        .map(|ty| {
            let mu = estimate.types.get(&ty).map_or(0.0, |m| m.mu);
            let f = empirical.get(&ty).copied().unwrap_or(0.0);
            (ty, mu, f, (mu - f).abs())
        })
        .collect()
}
