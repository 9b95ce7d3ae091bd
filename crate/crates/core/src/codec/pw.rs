use std::collections::BTreeSet;

use rand::Rng;

use super::CodecError;
use crate::structures::io::{parse_raw_tree, write_tree_with};
use crate::structures::{AIntervalGraph, NodeId, PlaneCTree, PlaneTree, SimpleGraph};

/// `→` in the third coordinate.
pub const RIGHT: u8 = 1;
/// `←` in the third coordinate.
pub const LEFT: u8 = 2;

/// Largest palette the codec accepts.
pub const MAX_PALETTE: usize = 24;

/// Color `(x, X, Z)` of a non-root node. `x` is a position in the palette,
/// `xs` has bit `i` set when the `i`-th palette entry is in `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub x: usize,
    pub xs: u32,
    pub z: u8,
}

impl Triple {
    pub fn has_left(&self) -> bool {
        self.z & LEFT != 0
    }

    pub fn has_right(&self) -> bool {
        self.z & RIGHT != 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.xs >> i & 1 == 1
    }
}

/// Plane tree whose non-root nodes carry triples over a palette, with the
/// encoder's node-to-vertex map when known. Nodes are numbered in preorder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PwTree {
    tree: PlaneTree,
    palette: Vec<u32>,
    triples: Vec<Option<Triple>>,
    assoc: Option<Vec<Option<usize>>>,
}

impl PwTree {
    pub fn new(
        tree: PlaneTree,
        palette: Vec<u32>,
        triples: Vec<Option<Triple>>,
        assoc: Option<Vec<Option<usize>>>,
    ) -> Result<Self, CodecError> {
        let (pre, _) = tree.to_preorder();
        if pre != tree {
            return Err(CodecError::Malformed("nodes must be numbered in preorder".into()));
        }
        if triples.len() != tree.len() || assoc.as_ref().is_some_and(|a| a.len() != tree.len()) {
            return Err(CodecError::Malformed("one entry per node expected".into()));
        }
        if palette.len() > MAX_PALETTE {
            return Err(CodecError::PaletteTooLarge(palette.len()));
        }
        let mut sorted = palette.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted != palette {
            return Err(CodecError::Malformed("palette must be strictly increasing".into()));
        }
        Ok(PwTree { tree, palette, triples, assoc })
    }

    pub fn tree(&self) -> &PlaneTree {
        &self.tree
    }

    pub fn palette(&self) -> &[u32] {
        &self.palette
    }

    pub fn triple(&self, v: NodeId) -> Option<Triple> {
        self.triples[v]
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }

    /// Encoder side: node to vertex index of the source graph.
    pub fn association(&self) -> Option<&[Option<usize>]> {
        self.assoc.as_deref()
    }

    /// Palette-value form of a triple: `(x, X, Z)`.
    pub fn triple_values(&self, t: Triple) -> (u32, Vec<u32>, u8) {
        let xs = (0..self.palette.len()).filter(|&i| t.contains(i)).map(|i| self.palette[i]).collect();
        (self.palette[t.x], xs, t.z)
    }

    /// Single color per node: 0 at the root, else `1 + x·2^(|A|+2) + X·4 + Z`.
    pub fn color_index(&self, t: Triple) -> u32 {
        color_index(self.palette.len(), t)
    }

    pub fn to_ctree(&self) -> PlaneCTree {
        let colors = self.triples.iter().map(|t| t.map_or(0, |t| self.color_index(t))).collect();
        PlaneCTree::new(self.tree.clone()).with_colors(colors).expect("one color per node")
    }

    /// Checks the shape every encoder output has: triples exactly on non-root
    /// nodes, depth at most `|A|`, and distinct first coordinates along each root path.
    pub fn validate(&self) -> Result<(), CodecError> {
        let a = self.palette.len();
        let root = self.tree.root();
        for v in 0..self.len() {
            match (v == root, self.triples[v]) {
                (true, Some(_)) => return Err(CodecError::Malformed("root carries a triple".into())),
                (false, None) => return Err(CodecError::Malformed(format!("node {v} has no triple"))),
                (false, Some(t)) if t.x >= a || t.xs >> a != 0 || t.z > (LEFT | RIGHT) => {
                    return Err(CodecError::Malformed(format!("node {v} has a triple outside the palette")));
                }
                _ => {}
            }
        }
        let mut seen = vec![0u32; self.len()];
        for v in self.tree.preorder() {
            if let Some(p) = self.tree.parent(v) {
                let bit = 1u32 << self.triples[v].expect("checked above").x;
                if seen[p] & bit != 0 {
                    return Err(CodecError::Malformed(format!("color repeats on the path to node {v}")));
                }
                seen[v] = seen[p] | bit;
                if seen[v].count_ones() as usize > a {
                    return Err(CodecError::Malformed("tree deeper than the palette".into()));
                }
            }
        }
        Ok(())
    }

    /// Tree text with `ctriple=x:X:Z` on non-root nodes (x a palette value, X and Z
    /// bitmasks over palette positions and `{→=1, ←=2}`), the palette on the root
    /// and `vertex=<label>` when the association is known.
    pub fn to_text(&self, labels: Option<&[u32]>) -> String {
        write_tree_with(&self.tree, &|v| {
            let mut parts = Vec::new();
            match self.triples[v] {
                None => parts
                    .push(format!("palette={}", self.palette.iter().map(u32::to_string).collect::<Vec<_>>().join(","))),
                Some(t) => parts.push(format!("ctriple={}:{}:{}", self.palette[t.x], t.xs, t.z)),
            }
            if let (Some(assoc), Some(labels)) = (&self.assoc, labels) {
                if let Some(i) = assoc[v] {
                    parts.push(format!("vertex={}", labels[i]));
                }
            }
            parts.join(" ")
        })
    }

    /// Reads [`PwTree::to_text`] output. `vertex` attributes are ignored.
    pub fn parse(text: &str) -> Result<PwTree, CodecError> {
        let raw = parse_raw_tree(text)?;
        let (tree, order) = raw.flatten()?;
        let palette: Vec<u32> = match order[0].attrs.get("palette") {
            None => return Err(CodecError::Malformed("root needs a palette attribute".into())),
            Some(s) if s.is_empty() => Vec::new(),
            Some(s) => s
                .split(',')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| CodecError::Malformed(format!("bad palette '{s}'")))?,
        };
        let mut triples = Vec::with_capacity(order.len());
        for node in &order {
            let Some(text) = node.attrs.get("ctriple") else {
                triples.push(None);
                continue;
            };
            let bad = || CodecError::Malformed(format!("bad ctriple '{text}' on node {}", node.id));
            let parts: Vec<&str> = text.split(':').collect();
            let [x, xs, z] = parts.as_slice() else { return Err(bad()) };
            let x: u32 = x.parse().map_err(|_| bad())?;
            let x = palette.iter().position(|&p| p == x).ok_or_else(bad)?;
            let xs: u32 = xs.parse().map_err(|_| bad())?;
            let z: u8 = z.parse().map_err(|_| bad())?;
            triples.push(Some(Triple { x, xs, z }));
        }
        PwTree::new(tree, palette, triples, None)
    }
}

pub fn color_index(palette_len: usize, t: Triple) -> u32 {
    1 + ((t.x as u32) << (palette_len + 2)) + (t.xs << 2) + u32::from(t.z)
}

#[derive(Clone, Copy)]
struct Iv {
    vertex: usize,
    lo: i64,
    hi: i64,
}

struct Node {
    children: Vec<usize>,
    triple: Option<Triple>,
    vertex: Option<usize>,
}

struct Encoder<'a, F> {
    h: &'a AIntervalGraph,
    nodes: Vec<Node>,
    pick: F,
}

impl<F: FnMut(&[usize]) -> usize> Encoder<'_, F> {
    fn color_pos(&self, v: usize) -> usize {
        let c = self.h.vertex(v).color;
        self.h.palette().binary_search(&c).expect("validated color")
    }

    fn new_node(&mut self) -> usize {
        self.nodes.push(Node { children: Vec::new(), triple: None, vertex: None });
        self.nodes.len() - 1
    }

    /// Non-root nodes of the subtree below `r`.
    fn below(&self, r: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = self.nodes[r].children.clone();
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend_from_slice(&self.nodes[u].children);
        }
        out
    }

    /// Returns the root of `t_A(G)` for the vertex set `vs` with the given
    /// intervals and the edges of `h` among them, minus `removed` pairs.
    fn encode(&mut self, mut vs: Vec<Iv>, removed: &BTreeSet<(usize, usize)>) -> usize {
        if vs.is_empty() {
            return self.new_node();
        }
        let first = vs.iter().map(|w| w.lo).min().expect("nonempty");
        for w in &mut vs {
            w.lo -= first;
            w.hi -= first;
        }
        let best = vs.iter().filter(|w| w.lo == 0).map(|w| w.hi).max().expect("some interval starts first");
        let mut ties: Vec<usize> = vs.iter().filter(|w| w.lo == 0 && w.hi == best).map(|w| w.vertex).collect();
        ties.sort_by_key(|&v| self.h.vertex(v).label);
        let v = ties[(self.pick)(&ties)];
        let hv = best;
        let g1: Vec<Iv> = vs
            .iter()
            .filter(|w| w.vertex != v && w.lo < hv)
            .map(|w| Iv { vertex: w.vertex, lo: w.lo, hi: w.hi.min(hv) })
            .collect();
        let g2: Vec<Iv> =
            vs.iter().filter(|w| w.hi > hv).map(|w| Iv { vertex: w.vertex, lo: w.lo.max(hv), hi: w.hi }).collect();
        let in1: BTreeSet<usize> = g1.iter().map(|w| w.vertex).collect();
        let shared: BTreeSet<usize> = g2.iter().map(|w| w.vertex).filter(|u| in1.contains(u)).collect();
        let mut removed2 = removed.clone();
        for &a in &in1 {
            for &b in &in1 {
                if a < b && self.h.graph().has_edge(a, b) {
                    removed2.insert((a, b));
                }
            }
        }
        let r1 = self.encode(g1, removed);
        let r2 = self.encode(g2, &removed2);
        let x = self.color_pos(v);
        self.nodes[r1].triple = Some(Triple { x, xs: 0, z: 0 });
        self.nodes[r1].vertex = Some(v);
        let adjacent = |u: usize| {
            let key = (u.min(v), u.max(v));
            self.h.graph().has_edge(u, v) && !removed.contains(&key)
        };
        for n in self.below(r1) {
            let w = self.nodes[n].vertex.expect("non-root nodes are associated");
            let mut t = self.nodes[n].triple.expect("non-root nodes are colored");
            if adjacent(w) && !t.has_left() {
                t.xs |= 1 << x;
            }
            if shared.contains(&w) {
                t.z |= RIGHT;
            }
            self.nodes[n].triple = Some(t);
        }
        for n in self.below(r2) {
            let w = self.nodes[n].vertex.expect("non-root nodes are associated");
            if shared.contains(&w) {
                self.nodes[n].triple.as_mut().expect("non-root nodes are colored").z |= LEFT;
            }
        }
        self.nodes[r2].children.insert(0, r1);
        r2
    }

    fn finish(self, root: usize) -> PwTree {
        let mut order = Vec::with_capacity(self.nodes.len());
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            order.push(u);
            stack.extend(self.nodes[u].children.iter().rev());
        }
        let mut new_id = vec![0; self.nodes.len()];
        for (i, &u) in order.iter().enumerate() {
            new_id[u] = i;
        }
        let children = order.iter().map(|&u| self.nodes[u].children.iter().map(|&c| new_id[c]).collect()).collect();
        let tree = PlaneTree::from_children(children).expect("encoder builds a tree");
        let triples = order.iter().map(|&u| self.nodes[u].triple).collect();
        let assoc = order.iter().map(|&u| self.nodes[u].vertex).collect();
        PwTree::new(tree, self.h.palette().to_vec(), triples, Some(assoc)).expect("encoder output is well formed")
    }
}

fn encode_with(h: &AIntervalGraph, pick: impl FnMut(&[usize]) -> usize) -> Result<PwTree, CodecError> {
    if h.palette().len() > MAX_PALETTE {
        return Err(CodecError::PaletteTooLarge(h.palette().len()));
    }
    let mut enc = Encoder { h, nodes: Vec::new(), pick };
    let vs = h.vertices().iter().enumerate().map(|(i, w)| Iv { vertex: i, lo: w.lo, hi: w.hi }).collect();
    let root = enc.encode(vs, &BTreeSet::new());
    Ok(enc.finish(root))
}

/// `t_A(H)`, choosing the smallest label among longest first intervals.
pub fn pw_encode(h: &AIntervalGraph) -> Result<PwTree, CodecError> {
    encode_with(h, |_| 0)
}

/// As [`pw_encode`] with ties between longest first intervals broken at random.
pub fn pw_encode_randomized<R: Rng>(h: &AIntervalGraph, rng: &mut R) -> Result<PwTree, CodecError> {
    encode_with(h, |ties| rng.gen_range(0..ties.len()))
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra.max(rb)] = ra.min(rb);
    }
}

/// The `←` node matched by the `→` node `u`: the first ancestor-or-self `w`
/// whose next sibling's first-child path holds a `←` node of the same color.
fn match_right(t: &PwTree, u: NodeId) -> Option<NodeId> {
    let x = t.triples[u]?.x;
    let tree = &t.tree;
    let mut w = u;
    while tree.parent(w).is_some() {
        let mut s = tree.next_sibling(w);
        while let Some(y) = s {
            let ty = t.triples[y].expect("non-root");
            if ty.x == x {
                if ty.has_left() {
                    return Some(y);
                }
                break;
            }
            s = tree.children(y).first().copied();
        }
        w = tree.parent(w).expect("checked");
    }
    None
}

/// Identification of nodes with decoded vertices: `result[v]` is the vertex
/// of node `v` (`None` at the root). Vertices are numbered by their `←`-free node.
pub fn pw_identify(t: &PwTree) -> Result<Vec<Option<usize>>, CodecError> {
    t.validate()?;
    let n = t.len();
    let mut uf = UnionFind((0..n).collect());
    let mut matched = vec![false; n];
    for u in 0..n {
        let Some(tu) = t.triples[u] else { continue };
        if tu.has_right() {
            let y = match_right(t, u).ok_or(CodecError::UnmatchedRight(u))?;
            matched[y] = true;
            uf.union(u, y);
        }
    }
    if let Some(y) = (0..n).find(|&y| t.triples[y].is_some_and(|ty| ty.has_left()) && !matched[y]) {
        return Err(CodecError::UnmatchedLeft(y));
    }
    let mut vertex_of_class = vec![None; n];
    let mut next = 0;
    for u in 0..n {
        if t.triples[u].is_some_and(|tu| !tu.has_left()) {
            let r = uf.find(u);
            if vertex_of_class[r].is_some() {
                return Err(CodecError::Ambiguous(u));
            }
            vertex_of_class[r] = Some(next);
            next += 1;
        }
    }
    (0..n)
        .map(|u| match t.triples[u] {
            None => Ok(None),
            Some(_) => vertex_of_class[uf.find(u)].map(Some).ok_or(CodecError::Ambiguous(u)),
        })
        .collect()
}

/// Recovers the graph: one vertex per `←`-free node (in node order) and an
/// edge for every node `u` with a strict ancestor `a` such that `x(a) ∈ X(u)`.
pub fn pw_decode_direct(t: &PwTree) -> Result<SimpleGraph, CodecError> {
    let ident = pw_identify(t)?;
    let count = ident.iter().flatten().max().map_or(0, |&m| m + 1);
    let mut edges = BTreeSet::new();
    for (u, a) in witness_pairs(t) {
        let (p, q) = (ident[u].expect("non-root"), ident[a].expect("non-root"));
        if p != q {
            edges.insert((p.min(q), p.max(q)));
        }
    }
    Ok(SimpleGraph::new(count, edges).expect("edges join distinct decoded vertices"))
}

/// Pairs `(u, a)` with `a` a strict non-root ancestor of `u` and `x(a) ∈ X(u)`.
pub fn witness_pairs(t: &PwTree) -> Vec<(NodeId, NodeId)> {
    let mut out = Vec::new();
    for u in 0..t.len() {
        let Some(tu) = t.triples[u] else { continue };
        let mut a = t.tree.parent(u);
        while let Some(p) = a {
            if let Some(tp) = t.triples[p] {
                if tu.contains(tp.x) {
                    out.push((u, p));
                }
            }
            a = t.tree.parent(p);
        }
    }
    out
}

/// Checks the association-map properties of an encoding of `h`; returns one
/// message per violation.
pub fn association_violations(h: &AIntervalGraph, t: &PwTree) -> Vec<String> {
    let mut out = Vec::new();
    let Some(assoc) = t.association() else {
        return vec!["no association map".into()];
    };
    let a = h.palette().len();
    let mut nodes_of = vec![Vec::new(); h.len()];
    for (u, v) in assoc.iter().enumerate() {
        if let Some(v) = *v {
            nodes_of[v].push(u);
        }
    }
    let mut leftmost = BTreeSet::new();
    let mut cur = t.tree.children(t.tree.root()).first().copied();
    while let Some(u) = cur {
        leftmost.insert(u);
        cur = t.tree.children(u).first().copied();
    }
    let (first, last) = (h.first_segment(), h.last_segment());
    for (v, nodes) in nodes_of.iter().enumerate() {
        let iv = h.vertex(v);
        if Some(iv.lo) == first && (nodes.len() != 1 || !leftmost.contains(&nodes[0])) {
            out.push(format!("first-segment vertex {} not a single leftmost-path node", iv.label));
        }
        if Some(iv.hi - 1) == last && nodes.len() > a {
            out.push(format!("last-segment vertex {} has {} nodes", iv.label, nodes.len()));
        }
        if nodes.len() > a + 1 {
            out.push(format!("vertex {} has {} nodes", iv.label, nodes.len()));
        }
        let free = nodes.iter().filter(|&&u| !t.triples[u].expect("non-root").has_left()).count();
        if free != 1 {
            out.push(format!("vertex {} has {free} nodes without the left marker", iv.label));
        }
    }
    let mut witnesses = std::collections::BTreeMap::new();
    for (u, p) in witness_pairs(t) {
        let (x, y) = (assoc[u].expect("non-root"), assoc[p].expect("non-root"));
        *witnesses.entry((x.min(y), x.max(y))).or_insert(0usize) += 1;
    }
    for (x, y) in h.graph().edges() {
        let c = witnesses.get(&(x, y)).copied().unwrap_or(0);
        if c != 1 {
            out.push(format!("edge {}-{} has {c} witness pairs", h.vertex(x).label, h.vertex(y).label));
        }
    }
    for (&(x, y), _) in witnesses.iter().filter(|(&(x, y), _)| !h.graph().has_edge(x, y)) {
        out.push(format!("non-edge {}-{} has a witness pair", h.vertex(x).label, h.vertex(y).label));
    }
    out
}

/// Tree depth (edges on the longest root path).
pub fn depth(t: &PwTree) -> usize {
    t.tree.height()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::IntervalVertex;

    fn iv(label: u32, lo: i64, hi: i64, color: u32) -> IntervalVertex {
        IntervalVertex { label, lo, hi, color }
    }

    fn p3() -> AIntervalGraph {
        AIntervalGraph::new([1, 2], vec![iv(0, 0, 1, 1), iv(1, 0, 2, 2), iv(2, 1, 2, 1)], [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn single_vertex() {
        let h = AIntervalGraph::new([1], vec![iv(7, 0, 1, 1)], []).unwrap();
        let t = pw_encode(&h).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.triple(1), Some(Triple { x: 0, xs: 0, z: 0 }));
        assert_eq!(pw_decode_direct(&t).unwrap(), SimpleGraph::empty(1));
    }

    #[test]
    fn k2() {
        let h = AIntervalGraph::new([1, 2], vec![iv(0, 0, 1, 1), iv(1, 0, 1, 2)], [(0, 1)]).unwrap();
        let t = pw_encode(&h).unwrap();
        assert_eq!(t.tree().children_lists(), &[vec![1], vec![2], vec![]]);
        assert_eq!(t.triple_values(t.triple(1).unwrap()), (1, vec![], 0));
        assert_eq!(t.triple_values(t.triple(2).unwrap()), (2, vec![1], 0));
        assert_eq!(t.association().unwrap(), &[None, Some(0), Some(1)]);
        assert_eq!(pw_decode_direct(&t).unwrap(), SimpleGraph::new(2, [(0, 1)]).unwrap());
    }

    #[test]
    fn p3_matches_hand_recursion() {
        let h = p3();
        let t = pw_encode(&h).unwrap();
        assert_eq!(t.tree().children_lists(), &[vec![1], vec![2, 3], vec![], vec![]]);
        assert_eq!(t.triple_values(t.triple(1).unwrap()), (2, vec![], 0));
        assert_eq!(t.triple_values(t.triple(2).unwrap()), (1, vec![2], 0));
        assert_eq!(t.triple_values(t.triple(3).unwrap()), (1, vec![2], 0));
        assert_eq!(t.association().unwrap(), &[None, Some(1), Some(0), Some(2)]);
        let g = pw_decode_direct(&t).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2)]);
        assert!(association_violations(&h, &t).is_empty());
    }

    #[test]
    fn shared_vertices_get_markers() {
        // a long interval split by a shorter first one
        let h = AIntervalGraph::new(
            [1, 2, 3],
            vec![iv(0, 0, 2, 1), iv(1, 1, 4, 2), iv(2, 2, 4, 1), iv(3, 3, 5, 3)],
            [(0, 1), (1, 2), (2, 3), (1, 3)],
        )
        .unwrap();
        let t = pw_encode(&h).unwrap();
        assert!((0..t.len()).any(|v| t.triple(v).is_some_and(|x| x.has_left())));
        assert!(association_violations(&h, &t).is_empty());
        let g = pw_decode_direct(&t).unwrap();
        assert_eq!(g.edge_count(), 4);
        assert!(t.len() <= 3 * 4 + 1);
    }

    #[test]
    fn text_round_trip() {
        let h = p3();
        let t = pw_encode(&h).unwrap();
        let labels: Vec<u32> = h.vertices().iter().map(|v| v.label).collect();
        let text = t.to_text(Some(&labels));
        assert!(text.contains("ctriple=2:0:0"));
        let back = PwTree::parse(&text).unwrap();
        assert_eq!(back.tree(), t.tree());
        assert_eq!(pw_decode_direct(&back).unwrap(), pw_decode_direct(&t).unwrap());
    }

    #[test]
    fn rejects_out_of_image_trees() {
        let tree = PlaneTree::from_children(vec![vec![1], vec![]]).unwrap();
        let dangling =
            PwTree::new(tree.clone(), vec![1], vec![None, Some(Triple { x: 0, xs: 0, z: RIGHT })], None).unwrap();
        assert_eq!(pw_identify(&dangling), Err(CodecError::UnmatchedRight(1)));
        let orphan =
            PwTree::new(tree.clone(), vec![1], vec![None, Some(Triple { x: 0, xs: 0, z: LEFT })], None).unwrap();
        assert_eq!(pw_identify(&orphan), Err(CodecError::UnmatchedLeft(1)));
        let rooted = PwTree::new(tree, vec![1], vec![Some(Triple { x: 0, xs: 0, z: 0 }), None], None).unwrap();
        assert!(matches!(rooted.validate(), Err(CodecError::Malformed(_))));
    }

    #[test]
    fn empty_graph_is_a_single_node() {
        let h = AIntervalGraph::new([1, 2], vec![], []).unwrap();
        let t = pw_encode(&h).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(pw_decode_direct(&t).unwrap().vertex_count(), 0);
    }
}
