use std::collections::BTreeMap;

use super::StructureError;

pub type NodeId = usize;

/// A rooted tree with a left-to-right order on each node's children.
///
/// Node ids are dense `0..n`. `parnt(x, y)` holds when `x` is a child of `y`;
/// `succ(x, y)` holds when `y` immediately follows `x` among their parent's children.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneTree {
    root: NodeId,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    rank: Vec<usize>,
}

impl PlaneTree {
    pub fn single() -> Self {
        PlaneTree { root: 0, parent: vec![None], children: vec![Vec::new()], rank: vec![0] }
    }

    /// Builds a tree from ordered child lists, one list per node.
    pub fn from_children(children: Vec<Vec<NodeId>>) -> Result<Self, StructureError> {
        let n = children.len();
        if n == 0 {
            return Err(StructureError::Empty);
        }
        let mut parent = vec![None; n];
        let mut rank = vec![0; n];
        for (p, list) in children.iter().enumerate() {
            for (i, &c) in list.iter().enumerate() {
                if c >= n {
                    return Err(StructureError::NodeOutOfRange(c));
                }
                if c == p {
                    return Err(StructureError::Cycle(c));
                }
                if parent[c].is_some() {
                    return Err(StructureError::DuplicateChild(c));
                }
                parent[c] = Some(p);
                rank[c] = i;
            }
        }
        let roots: Vec<_> = (0..n).filter(|&v| parent[v].is_none()).collect();
        let root = match roots.as_slice() {
            [r] => *r,
            [] => return Err(StructureError::Cycle(0)),
            _ => return Err(StructureError::MultipleRoots(roots[0], roots[1])),
        };
        let tree = PlaneTree { root, parent, children, rank };
        // every node must be reachable from the root, otherwise a cycle hides it
        let reached = tree.preorder().len();
        if reached != n {
            let seen: std::collections::HashSet<_> = tree.preorder().into_iter().collect();
            let missing = (0..n).find(|v| !seen.contains(v)).unwrap();
            return Err(StructureError::Cycle(missing));
        }
        Ok(tree)
    }

    /// Builds a tree from a parent array; children are ordered by id.
    pub fn from_parents(parents: &[Option<NodeId>]) -> Result<Self, StructureError> {
        let n = parents.len();
        let mut children = vec![Vec::new(); n];
        for (v, p) in parents.iter().enumerate() {
            if let Some(p) = *p {
                if p >= n {
                    return Err(StructureError::NodeOutOfRange(p));
                }
                children[p].push(v);
            }
        }
        Self::from_children(children)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        self.parent[v]
    }

    pub fn children(&self, v: NodeId) -> &[NodeId] {
        &self.children[v]
    }

    /// Position of `v` in its parent's child list (0 for the root).
    pub fn rank(&self, v: NodeId) -> usize {
        self.rank[v]
    }

    pub fn is_leaf(&self, v: NodeId) -> bool {
        self.children[v].is_empty()
    }

    /// The sibling immediately before `v`, i.e. the `x` with `succ(x, v)`.
    pub fn prev_sibling(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v]?;
        let r = self.rank[v];
        (r > 0).then(|| self.children[p][r - 1])
    }

    /// The sibling immediately after `v`, i.e. the `y` with `succ(v, y)`.
    pub fn next_sibling(&self, v: NodeId) -> Option<NodeId> {
        let p = self.parent[v]?;
        self.children[p].get(self.rank[v] + 1).copied()
    }

    pub fn parnt(&self, x: NodeId, y: NodeId) -> bool {
        self.parent[x] == Some(y)
    }

    pub fn succ(&self, x: NodeId, y: NodeId) -> bool {
        self.next_sibling(x) == Some(y)
    }

    /// Neighbours of `v` under `parnt ∪ succ` in either direction:
    /// parent, previous sibling, next sibling, then children in order.
    pub fn gaifman_neighbors(&self, v: NodeId) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(3 + self.children[v].len());
        out.extend(self.parent[v]);
        out.extend(self.prev_sibling(v));
        out.extend(self.next_sibling(v));
        out.extend_from_slice(&self.children[v]);
        out
    }

    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }

    pub fn depth(&self, mut v: NodeId) -> usize {
        let mut d = 0;
        while let Some(p) = self.parent[v] {
            d += 1;
            v = p;
        }
        d
    }

    /// Largest depth of any node (0 for a single node).
    pub fn height(&self) -> usize {
        let mut depth = vec![0usize; self.len()];
        let mut best = 0;
        for v in self.preorder() {
            if let Some(p) = self.parent[v] {
                depth[v] = depth[p] + 1;
                best = best.max(depth[v]);
            }
        }
        best
    }

    /// `ancestor(v, k)` is the `k`-th parent of `v`.
    pub fn ancestor(&self, mut v: NodeId, k: usize) -> Option<NodeId> {
        for _ in 0..k {
            v = self.parent[v]?;
        }
        Some(v)
    }

    /// Number of nodes in the subtree of every node.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut size = vec![1usize; self.len()];
        for &v in self.preorder().iter().rev() {
            if let Some(p) = self.parent[v] {
                size[p] += size[v];
            }
        }
        size
    }

    /// Sizes of the components of the tree with `u` deleted, largest first.
    pub fn components_after_removal(&self, u: NodeId) -> Vec<usize> {
        let size = self.subtree_sizes();
        self.components_with_sizes(u, &size)
    }

    pub(crate) fn components_with_sizes(&self, u: NodeId, size: &[usize]) -> Vec<usize> {
        let mut comps: Vec<usize> = self.children[u].iter().map(|&c| size[c]).collect();
        if self.parent[u].is_some() {
            comps.push(self.len() - size[u]);
        }
        comps.sort_unstable_by(|a, b| b.cmp(a));
        comps
    }

    /// Copy of the tree with ids renumbered in preorder; also returns `old -> new`.
    pub fn to_preorder(&self) -> (PlaneTree, Vec<NodeId>) {
        let order = self.preorder();
        let mut map = vec![0; self.len()];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let mut children = vec![Vec::new(); self.len()];
        for &old in &order {
            children[map[old]] = self.children[old].iter().map(|&c| map[c]).collect();
        }
        (PlaneTree::from_children(children).expect("relabelled tree stays valid"), map)
    }

    pub fn children_lists(&self) -> &[Vec<NodeId>] {
        &self.children
    }
}

/// A plane tree with optional injective constants `c_i` and optional node colors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneCTree {
    tree: PlaneTree,
    constants: BTreeMap<u32, NodeId>,
    const_of: Vec<Option<u32>>,
    colors: Option<Vec<u32>>,
}

impl PlaneCTree {
    pub fn new(tree: PlaneTree) -> Self {
        let n = tree.len();
        PlaneCTree { tree, constants: BTreeMap::new(), const_of: vec![None; n], colors: None }
    }

    pub fn with_constants(
        tree: PlaneTree,
        constants: impl IntoIterator<Item = (u32, NodeId)>,
    ) -> Result<Self, StructureError> {
        let mut out = PlaneCTree::new(tree);
        for (i, v) in constants {
            out.set_constant(i, v)?;
        }
        Ok(out)
    }

    pub fn set_constant(&mut self, index: u32, v: NodeId) -> Result<(), StructureError> {
        if v >= self.tree.len() {
            return Err(StructureError::NodeOutOfRange(v));
        }
        if index == 0 {
            return Err(StructureError::BadConstantIndex);
        }
        if self.constants.contains_key(&index) || self.const_of[v].is_some() {
            return Err(StructureError::ConstantsNotInjective(index, v));
        }
        self.constants.insert(index, v);
        self.const_of[v] = Some(index);
        Ok(())
    }

    /// Attaches node colors; colors are positive integers.
    pub fn with_colors(mut self, colors: Vec<u32>) -> Result<Self, StructureError> {
        if colors.len() != self.tree.len() {
            return Err(StructureError::ColorCount { expected: self.tree.len(), got: colors.len() });
        }
        self.colors = Some(colors);
        Ok(self)
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn constant(&self, index: u32) -> Option<NodeId> {
        self.constants.get(&index).copied()
    }

    pub fn constant_index(&self, v: NodeId) -> Option<u32> {
        self.const_of[v]
    }

    pub fn constants(&self) -> &BTreeMap<u32, NodeId> {
        &self.constants
    }

    /// Color of `v`, or 0 when the tree carries no colors.
    pub fn color(&self, v: NodeId) -> u32 {
        self.colors.as_ref().map_or(0, |c| c[v])
    }

    pub fn colors(&self) -> Option<&[u32]> {
        self.colors.as_deref()
    }
}

impl From<PlaneTree> for PlaneCTree {
    fn from(tree: PlaneTree) -> Self {
        PlaneCTree::new(tree)
    }
}
