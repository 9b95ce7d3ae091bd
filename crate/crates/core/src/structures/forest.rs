use super::{NodeId, PlaneTree, StructureError};

/// An ordered list of plane trees whose nodes carry colors from `1..=k`.
///
/// `succ` additionally relates consecutive roots in forest order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPlaneForest {
    trees: Vec<PlaneTree>,
    colors: Vec<Vec<u32>>,
    palette: u32,
}

impl ColoredPlaneForest {
    pub fn new(trees: Vec<PlaneTree>, colors: Vec<Vec<u32>>, palette: u32) -> Result<Self, StructureError> {
        if trees.len() != colors.len() {
            return Err(StructureError::ColorCount { expected: trees.len(), got: colors.len() });
        }
        for (t, c) in trees.iter().zip(&colors) {
            if t.len() != c.len() {
                return Err(StructureError::ColorCount { expected: t.len(), got: c.len() });
            }
            if let Some(&bad) = c.iter().find(|&&x| x == 0 || x > palette) {
                return Err(StructureError::ColorOutOfPalette { color: bad, palette });
            }
        }
        Ok(ColoredPlaneForest { trees, colors, palette })
    }

    pub fn empty(palette: u32) -> Self {
        ColoredPlaneForest { trees: Vec::new(), colors: Vec::new(), palette }
    }

    pub fn trees(&self) -> &[PlaneTree] {
        &self.trees
    }

    pub fn colors(&self, tree: usize) -> &[u32] {
        &self.colors[tree]
    }

    pub fn palette(&self) -> u32 {
        self.palette
    }

    pub fn node_count(&self) -> usize {
        self.trees.iter().map(PlaneTree::len).sum()
    }

    /// Same forest with every tree renumbered in preorder; equal forests
    /// (as structures) have equal normal forms.
    pub fn normalized(&self) -> Self {
        let mut trees = Vec::with_capacity(self.trees.len());
        let mut colors = Vec::with_capacity(self.trees.len());
        for (t, c) in self.trees.iter().zip(&self.colors) {
            let (p, map) = t.to_preorder();
            let mut nc = vec![0; c.len()];
            for (old, &new) in map.iter().enumerate() {
                nc[new] = c[old];
            }
            trees.push(p);
            colors.push(nc);
        }
        ColoredPlaneForest { trees, colors, palette: self.palette }
    }

    /// Global node numbering: trees in order, each in preorder.
    /// Returns `(tree index, local node)` for each global id.
    pub fn global_nodes(&self) -> Vec<(usize, NodeId)> {
        self.trees.iter().enumerate().flat_map(|(i, t)| t.preorder().into_iter().map(move |v| (i, v))).collect()
    }
}
