use super::CodecError;
use crate::structures::{ColoredPlaneForest, NodeId, PlaneTree};

/// Encodes a `k`-colored plane forest as one plane tree: a fresh root whose
/// children are the forest roots, and a node of color `i` gets `i` leaf
/// children in front of its own. Output nodes are numbered in preorder, so the
/// forest nodes appear in the forest's global preorder.
pub fn forest_encode(f: &ColoredPlaneForest) -> PlaneTree {
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new()];
    fn visit(t: &PlaneTree, colors: &[u32], v: NodeId, parent: NodeId, children: &mut Vec<Vec<NodeId>>) {
        let me = children.len();
        children.push(Vec::new());
        children[parent].push(me);
        for _ in 0..colors[v] {
            let leaf = children.len();
            children.push(Vec::new());
            children[me].push(leaf);
        }
        for &c in t.children(v) {
            visit(t, colors, c, me, children);
        }
    }
    for (i, t) in f.trees().iter().enumerate() {
        visit(t, f.colors(i), t.root(), 0, &mut children);
    }
    PlaneTree::from_children(children).expect("encoding is a tree")
}

/// Inverse of [`forest_encode`]. Fails when `t` is not the encoding of a
/// forest colored from `1..=k`.
pub fn forest_decode(t: &PlaneTree, k: u32) -> Result<ColoredPlaneForest, CodecError> {
    let mut trees = Vec::new();
    let mut colors = Vec::new();
    for &r in t.children(t.root()) {
        let mut children: Vec<Vec<NodeId>> = Vec::new();
        let mut cols = Vec::new();
        let mut stack = vec![(r, None::<NodeId>)];
        while let Some((v, parent)) = stack.pop() {
            let kids = t.children(v);
            let c = kids.iter().take_while(|&&x| t.is_leaf(x)).count();
            if c == 0 || c as u64 > u64::from(k) {
                return Err(CodecError::NotInImage(format!("node {v} has {c} leading leaves")));
            }
            let me = children.len();
            children.push(Vec::new());
            cols.push(c as u32);
            if let Some(p) = parent {
                children[p].push(me);
            }
            for &x in kids[c..].iter().rev() {
                stack.push((x, Some(me)));
            }
        }
        trees.push(PlaneTree::from_children(children).expect("decoded subtree is a tree"));
        colors.push(cols);
    }
    ColoredPlaneForest::new(trees, colors, k).map_err(CodecError::Structure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{apply_interpretation, forest_scheme};
    use crate::logic::forest_structure;

    fn sample() -> ColoredPlaneForest {
        let a = PlaneTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        let b = PlaneTree::single();
        ColoredPlaneForest::new(vec![a, b], vec![vec![2, 1, 3], vec![1]], 3).unwrap()
    }

    #[test]
    fn round_trip() {
        let f = sample();
        let t = forest_encode(&f);
        assert_eq!(t.len(), 1 + 4 + 7);
        assert_eq!(forest_decode(&t, 3).unwrap(), f.normalized());
    }

    #[test]
    fn scheme_matches_decoder() {
        let f = sample();
        let out = apply_interpretation(&forest_scheme(3), &forest_encode(&f)).unwrap();
        let got = out.to_rel_structure();
        let want = forest_structure(&f);
        assert_eq!(got.parnt_pairs(), want.parnt_pairs());
        assert_eq!(got.succ_pairs(), want.succ_pairs());
        assert_eq!(got.colors(), want.colors());
    }

    #[test]
    fn rejects_non_images() {
        // root child that is a bare leaf
        let t = PlaneTree::from_children(vec![vec![1], vec![]]).unwrap();
        assert!(forest_decode(&t, 2).is_err());
        // too many marker leaves for the palette
        let t = PlaneTree::from_children(vec![vec![1], vec![2, 3, 4], vec![], vec![], vec![]]).unwrap();
        assert!(forest_decode(&t, 2).is_err());
        assert!(forest_decode(&t, 3).is_ok());
    }

    #[test]
    fn empty_forest() {
        let t = forest_encode(&ColoredPlaneForest::empty(2));
        assert_eq!(t.len(), 1);
        assert!(forest_decode(&t, 2).unwrap().trees().is_empty());
    }
}
