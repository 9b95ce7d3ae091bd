//! Tree and graph families used by tests, examples and the `gen-family` command.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::structures::{
    AIntervalGraph, ColoredPlaneForest, IntervalVertex, NodeId, PathDecomposition, PlaneTree, SimpleGraph,
};

/// Path on `n ≥ 1` nodes rooted at one end.
pub fn path(n: usize) -> PlaneTree {
    assert!(n >= 1, "a path needs a node");
    PlaneTree::from_children((0..n).map(|i| if i + 1 < n { vec![i + 1] } else { vec![] }).collect())
        .expect("path is a tree")
}

/// Root with `leaves` leaf children.
pub fn star(leaves: usize) -> PlaneTree {
    let mut ch = vec![(1..=leaves).collect::<Vec<_>>()];
    ch.extend((0..leaves).map(|_| Vec::new()));
    PlaneTree::from_children(ch).expect("star is a tree")
}

/// Rooted spine of `spine ≥ 1` nodes; each spine node has `legs` leaves before its spine child.
pub fn caterpillar(spine: usize, legs: usize) -> PlaneTree {
    assert!(spine >= 1, "a caterpillar needs a spine node");
    let mut children: Vec<Vec<NodeId>> = Vec::new();
    let mut prev: Option<NodeId> = None;
    for _ in 0..spine {
        let s = children.len();
        children.push(Vec::new());
        if let Some(p) = prev {
            children[p].push(s);
        }
        for _ in 0..legs {
            let leaf = children.len();
            children.push(Vec::new());
            children[s].push(leaf);
        }
        prev = Some(s);
    }
    PlaneTree::from_children(children).expect("caterpillar is a tree")
}

/// Complete binary tree with `levels ≥ 1` levels.
pub fn complete_binary(levels: u32) -> PlaneTree {
    assert!(levels >= 1, "need at least the root level");
    let n = (1usize << levels) - 1;
    PlaneTree::from_children((0..n).map(|i| if 2 * i + 2 < n { vec![2 * i + 1, 2 * i + 2] } else { vec![] }).collect())
        .expect("heap layout is a tree")
}

/// Uniform random recursive tree: node `i` picks a parent among `0..i` and a
/// uniform position in its child list.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> PlaneTree {
    assert!(n >= 1, "a tree needs a node");
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for i in 1..n {
        let p = rng.gen_range(0..i);
        let pos = rng.gen_range(0..=children[p].len());
        children[p].insert(pos, i);
    }
    PlaneTree::from_children(children).expect("attachment yields a tree")
}

/// Random recursive tree with attachment biased towards recent nodes, giving
/// long paths; `bias` in `[0, 1]` is the chance of attaching to the newest node.
pub fn random_deep_tree<R: Rng>(n: usize, bias: f64, rng: &mut R) -> PlaneTree {
    assert!(n >= 1, "a tree needs a node");
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for i in 1..n {
        let p = if rng.gen_bool(bias) { i - 1 } else { rng.gen_range(0..i) };
        let pos = rng.gen_range(0..=children[p].len());
        children[p].insert(pos, i);
    }
    PlaneTree::from_children(children).expect("attachment yields a tree")
}

/// Random forest of at most `max_nodes` nodes colored from `1..=k`.
pub fn random_forest<R: Rng>(max_nodes: usize, k: u32, rng: &mut R) -> ColoredPlaneForest {
    let mut left = rng.gen_range(0..=max_nodes);
    let mut trees = Vec::new();
    let mut colors = Vec::new();
    while left > 0 {
        let n = rng.gen_range(1..=left);
        left -= n;
        trees.push(random_tree(n, rng));
        colors.push((0..n).map(|_| rng.gen_range(1..=k)).collect());
    }
    ColoredPlaneForest::new(trees, colors, k).expect("colors lie in the palette")
}

/// Every plane tree with exactly `n` nodes, nodes numbered in preorder.
pub fn plane_trees(n: usize) -> Vec<PlaneTree> {
    // a plane tree on n nodes is a root over a sequence of trees with n-1 nodes in total
    fn forests(n: usize, memo: &mut Vec<Option<Vec<Vec<PlaneTree>>>>) -> Vec<Vec<PlaneTree>> {
        if let Some(f) = &memo[n] {
            return f.clone();
        }
        let mut out = Vec::new();
        if n == 0 {
            out.push(Vec::new());
        }
        for first in 1..=n {
            let heads = trees(first, memo);
            let tails = forests(n - first, memo);
            for h in &heads {
                for t in &tails {
                    let mut f = vec![h.clone()];
                    f.extend(t.iter().cloned());
                    out.push(f);
                }
            }
        }
        memo[n] = Some(out.clone());
        out
    }
    fn trees(n: usize, memo: &mut Vec<Option<Vec<Vec<PlaneTree>>>>) -> Vec<PlaneTree> {
        forests(n - 1, memo).into_iter().map(|f| join(&f)).collect()
    }
    if n == 0 {
        return Vec::new();
    }
    let mut memo = vec![None; n];
    trees(n, &mut memo)
}

/// A new root over the given trees, renumbered in preorder.
pub fn join(trees: &[PlaneTree]) -> PlaneTree {
    let mut children: Vec<Vec<NodeId>> = vec![Vec::new()];
    for t in trees {
        let offset = children.len();
        children[0].push(offset + t.root());
        for v in 0..t.len() {
            children.push(t.children(v).iter().map(|&c| c + offset).collect());
        }
    }
    let joined = PlaneTree::from_children(children).expect("joined trees form a tree");
    joined.to_preorder().0
}

/// All plane trees with at most `max_nodes` nodes, by size, capped at `cap` trees.
pub fn plane_trees_up_to(max_nodes: usize, cap: usize) -> Vec<PlaneTree> {
    (1..=max_nodes).flat_map(plane_trees).take(cap).collect()
}

/// Fan: apex `0` adjacent to every vertex of the path `1..=len`, with its
/// width-2 decomposition `{0, i, i+1}`.
pub fn fan(len: usize) -> (SimpleGraph, PathDecomposition) {
    assert!(len >= 1, "a fan needs a path vertex");
    let edges = (1..=len).map(|i| (0, i)).chain((1..len).map(|i| (i, i + 1)));
    let g = SimpleGraph::new(len + 1, edges).expect("fan is simple");
    let bags = if len == 1 { vec![vec![0, 1]] } else { (1..len).map(|i| vec![0, i, i + 1]).collect() };
    (g, PathDecomposition::new(bags))
}

/// Random graph with a path decomposition of width at most `width`: vertices
/// enter and leave a window of at most `width + 1` vertices, and each pair
/// sharing a bag becomes an edge with probability `density`.
pub fn random_pw<R: Rng>(n: usize, width: usize, density: f64, rng: &mut R) -> (SimpleGraph, PathDecomposition) {
    let mut bags: Vec<Vec<usize>> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut next = 0;
    let mut edges = Vec::new();
    while next < n || active.len() > 1 {
        let can_add = next < n && active.len() <= width;
        let add = can_add && (active.is_empty() || rng.gen_bool(0.6));
        if add {
            for &u in &active {
                if rng.gen_bool(density) {
                    edges.push((u, next));
                }
            }
            active.push(next);
            next += 1;
            bags.push(active.clone());
        } else {
            let i = rng.gen_range(0..active.len());
            active.swap_remove(i);
        }
    }
    if n > 0 && bags.is_empty() {
        bags.push(active.clone());
    }
    let g = SimpleGraph::new(n, edges).expect("pairs are distinct");
    (g, PathDecomposition::new(bags))
}

/// Random A-interval graph on `n` vertices with palette `[width + 1]`, built
/// from [`random_pw`]; vertex labels are shuffled so label order differs from
/// interval order.
pub fn random_interval_graph<R: Rng>(n: usize, width: usize, density: f64, rng: &mut R) -> AIntervalGraph {
    let (g, pd) = random_pw(n, width, density, rng);
    let h = crate::codec::pd_to_interval(&g, &pd).expect("generated decomposition is valid");
    let mut labels: Vec<u32> = (0..n as u32).collect();
    labels.shuffle(rng);
    let vertices = h.vertices().iter().map(|v| IntervalVertex { label: labels[v.label as usize], ..*v }).collect();
    let palette: Vec<u32> = (1..=width as u32 + 1).collect();
    AIntervalGraph::new(palette, vertices, g.edges()).expect("relabelling keeps validity")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=9).map(|n| plane_trees(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        assert_eq!(plane_trees_up_to(9, 5000).len(), 2056);
        let mut all = plane_trees(6);
        all.sort_by_key(|t| format!("{:?}", t.children_lists()));
        all.dedup();
        assert_eq!(all.len(), 42);
    }

    #[test]
    fn shapes() {
        assert_eq!(path(4).height(), 3);
        assert_eq!(star(5).children(0).len(), 5);
        assert_eq!(caterpillar(3, 2).len(), 9);
        assert_eq!(complete_binary(3).len(), 7);
        let (g, pd) = fan(5);
        assert_eq!(pd.width(), Some(2));
        assert!(pd.validate(&g).is_ok());
    }

    #[test]
    fn random_decompositions_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 0..30 {
            let (g, pd) = random_pw(n, 2, 0.5, &mut rng);
            assert!(pd.validate(&g).is_ok());
            assert!(pd.width().unwrap_or(0) <= 2);
            let h = random_interval_graph(n, 3, 0.5, &mut rng);
            assert_eq!(h.len(), n);
            assert!(h.max_load() <= 4);
        }
        let f = random_forest(50, 4, &mut rng);
        assert!(f.node_count() <= 50);
        assert_eq!(random_tree(100, &mut rng).len(), 100);
    }
}
