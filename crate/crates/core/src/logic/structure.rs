use std::collections::{BTreeMap, BTreeSet};

use crate::structures::{ColoredPlaneForest, NodeId, PlaneCTree, PlaneTree};

/// A finite structure over the plane-tree signature with nodes `0..size()`.
pub trait Structure: Sync {
    fn size(&self) -> usize;
    fn parnt(&self, x: NodeId, y: NodeId) -> bool;
    fn succ(&self, x: NodeId, y: NodeId) -> bool;
    /// Color of `v`, 0 when uncolored.
    fn color(&self, v: NodeId) -> u32;
    fn constant(&self, i: u32) -> Option<NodeId>;
    /// Gaifman neighbours of `v` (no duplicates, never `v` itself).
    fn neighbors(&self, v: NodeId, out: &mut Vec<NodeId>);
}

impl Structure for PlaneTree {
    fn size(&self) -> usize {
        self.len()
    }
    fn parnt(&self, x: NodeId, y: NodeId) -> bool {
        PlaneTree::parnt(self, x, y)
    }
    fn succ(&self, x: NodeId, y: NodeId) -> bool {
        PlaneTree::succ(self, x, y)
    }
    fn color(&self, _: NodeId) -> u32 {
        0
    }
    fn constant(&self, _: u32) -> Option<NodeId> {
        None
    }
    fn neighbors(&self, v: NodeId, out: &mut Vec<NodeId>) {
        out.clear();
        out.extend(self.parent(v));
        out.extend(self.prev_sibling(v));
        out.extend(self.next_sibling(v));
        out.extend_from_slice(self.children(v));
    }
}

impl Structure for PlaneCTree {
    fn size(&self) -> usize {
        self.len()
    }
    fn parnt(&self, x: NodeId, y: NodeId) -> bool {
        self.tree().parnt(x, y)
    }
    fn succ(&self, x: NodeId, y: NodeId) -> bool {
        self.tree().succ(x, y)
    }
    fn color(&self, v: NodeId) -> u32 {
        PlaneCTree::color(self, v)
    }
    fn constant(&self, i: u32) -> Option<NodeId> {
        PlaneCTree::constant(self, i)
    }
    fn neighbors(&self, v: NodeId, out: &mut Vec<NodeId>) {
        Structure::neighbors(self.tree(), v, out)
    }
}

/// Explicit relational structure, used for interpretation outputs and induced substructures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelStructure {
    size: usize,
    parnt: BTreeSet<(NodeId, NodeId)>,
    succ: BTreeSet<(NodeId, NodeId)>,
    colors: Vec<u32>,
    constants: BTreeMap<u32, NodeId>,
    adjacency: Vec<Vec<NodeId>>,
}

impl RelStructure {
    pub fn new(
        size: usize,
        parnt: impl IntoIterator<Item = (NodeId, NodeId)>,
        succ: impl IntoIterator<Item = (NodeId, NodeId)>,
        colors: Vec<u32>,
        constants: BTreeMap<u32, NodeId>,
    ) -> Self {
        assert_eq!(colors.len(), size, "one color entry per node");
        let parnt: BTreeSet<_> = parnt.into_iter().collect();
        let succ: BTreeSet<_> = succ.into_iter().collect();
        let mut adj = vec![BTreeSet::new(); size];
        for &(x, y) in parnt.iter().chain(&succ) {
            assert!(x < size && y < size, "relation pair out of range");
            if x != y {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
        let adjacency = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        RelStructure { size, parnt, succ, colors, constants, adjacency }
    }

    /// Copies any structure into explicit form.
    pub fn from_structure<S: Structure + ?Sized>(s: &S, max_constant: u32) -> Self {
        let n = s.size();
        let pairs = |rel: &dyn Fn(NodeId, NodeId) -> bool| {
            (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| rel(x, y)).collect::<Vec<_>>()
        };
        let parnt = pairs(&|x, y| s.parnt(x, y));
        let succ = pairs(&|x, y| s.succ(x, y));
        let colors = (0..n).map(|v| s.color(v)).collect();
        let constants = (1..=max_constant).filter_map(|i| s.constant(i).map(|v| (i, v))).collect();
        RelStructure::new(n, parnt, succ, colors, constants)
    }

    /// Substructure induced on `keep`; node `keep[i]` becomes `i`. Constants outside are dropped.
    pub fn induced<S: Structure + ?Sized>(s: &S, keep: &[NodeId], max_constant: u32) -> Self {
        let index: BTreeMap<NodeId, NodeId> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut parnt = Vec::new();
        let mut succ = Vec::new();
        for (&x, &ix) in &index {
            for (&y, &iy) in &index {
                if s.parnt(x, y) {
                    parnt.push((ix, iy));
                }
                if s.succ(x, y) {
                    succ.push((ix, iy));
                }
            }
        }
        let colors = keep.iter().map(|&v| s.color(v)).collect();
        let constants =
            (1..=max_constant).filter_map(|i| s.constant(i).and_then(|v| index.get(&v)).map(|&v| (i, v))).collect();
        RelStructure::new(keep.len(), parnt, succ, colors, constants)
    }

    pub fn parnt_pairs(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.parnt
    }

    pub fn succ_pairs(&self) -> &BTreeSet<(NodeId, NodeId)> {
        &self.succ
    }

    pub fn colors(&self) -> &[u32] {
        &self.colors
    }

    pub fn constants(&self) -> &BTreeMap<u32, NodeId> {
        &self.constants
    }
}

impl Structure for RelStructure {
    fn size(&self) -> usize {
        self.size
    }
    fn parnt(&self, x: NodeId, y: NodeId) -> bool {
        self.parnt.contains(&(x, y))
    }
    fn succ(&self, x: NodeId, y: NodeId) -> bool {
        self.succ.contains(&(x, y))
    }
    fn color(&self, v: NodeId) -> u32 {
        self.colors[v]
    }
    fn constant(&self, i: u32) -> Option<NodeId> {
        self.constants.get(&i).copied()
    }
    fn neighbors(&self, v: NodeId, out: &mut Vec<NodeId>) {
        out.clear();
        out.extend_from_slice(&self.adjacency[v]);
    }
}

/// A colored plane forest as a structure. Nodes are numbered tree by tree in
/// preorder (see [`ColoredPlaneForest::global_nodes`]) and `succ` also links
/// consecutive roots.
pub fn forest_structure(f: &ColoredPlaneForest) -> RelStructure {
    let f = f.normalized();
    let mut offset = 0;
    let mut parnt = Vec::new();
    let mut succ = Vec::new();
    let mut colors = Vec::new();
    let mut prev_root: Option<NodeId> = None;
    for (i, t) in f.trees().iter().enumerate() {
        for v in 0..t.len() {
            if let Some(p) = t.parent(v) {
                parnt.push((v + offset, p + offset));
            }
            if let Some(n) = t.next_sibling(v) {
                succ.push((v + offset, n + offset));
            }
        }
        let root = t.root() + offset;
        if let Some(p) = prev_root {
            succ.push((p, root));
        }
        prev_root = Some(root);
        colors.extend_from_slice(f.colors(i));
        offset += t.len();
    }
    RelStructure::new(offset, parnt, succ, colors, BTreeMap::new())
}
