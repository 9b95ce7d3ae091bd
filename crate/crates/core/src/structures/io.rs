//! Text formats.
//!
//! Trees are S-expressions `(id attr* child*)` with attributes `color=K`,
//! `const=I` (and `ctriple=x:X:Z` for path-width trees). A forest file is
//! `(forest tree+)`. A-interval graphs use lines `palette a1 a2 ...`,
//! `v id lo hi color` and `e id id`. Path decompositions list one bag per line.
//! Plain graphs use `n count` and `e u v` lines.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use super::{
    AIntervalGraph, ColoredPlaneForest, IntervalVertex, NodeId, PathDecomposition, PlaneCTree, PlaneTree, SimpleGraph,
    StructureError,
};
use crate::sexp::{self, Sexp};

/// A tree node as written in a file, before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawNode {
    pub id: i64,
    pub pos: usize,
    pub attrs: BTreeMap<String, String>,
    pub children: Vec<RawNode>,
}

fn parse_err(pos: usize, msg: impl Into<String>) -> StructureError {
    StructureError::Parse { pos, msg: msg.into() }
}

impl RawNode {
    pub fn from_sexp(s: &Sexp) -> Result<RawNode, StructureError> {
        let items = s.as_list().ok_or_else(|| parse_err(s.pos(), "expected '(' to open a node"))?;
        let (head, rest) = items.split_first().ok_or_else(|| parse_err(s.pos(), "empty node"))?;
        let id = head
            .as_atom()
            .and_then(|a| a.parse::<i64>().ok())
            .ok_or_else(|| parse_err(head.pos(), "node id must be an integer"))?;
        let mut attrs = BTreeMap::new();
        let mut children = Vec::new();
        for item in rest {
            match item {
                Sexp::Atom { text, pos } => {
                    if !children.is_empty() {
                        return Err(parse_err(*pos, "attribute after child"));
                    }
                    let (k, v) =
                        text.split_once('=').ok_or_else(|| parse_err(*pos, format!("bad attribute '{text}'")))?;
                    if attrs.insert(k.to_string(), v.to_string()).is_some() {
                        return Err(parse_err(*pos, format!("repeated attribute '{k}'")));
                    }
                }
                Sexp::List { .. } => children.push(RawNode::from_sexp(item)?),
            }
        }
        Ok(RawNode { id, pos: s.pos(), attrs, children })
    }

    /// Flattens to preorder: returns child lists and the raw nodes in preorder.
    pub fn flatten(&self) -> Result<(PlaneTree, Vec<&RawNode>), StructureError> {
        let mut order: Vec<&RawNode> = Vec::new();
        let mut children: Vec<Vec<NodeId>> = Vec::new();
        let mut seen = HashSet::new();
        fn walk<'a>(
            node: &'a RawNode,
            order: &mut Vec<&'a RawNode>,
            children: &mut Vec<Vec<NodeId>>,
            seen: &mut HashSet<i64>,
        ) -> Result<NodeId, StructureError> {
            if !seen.insert(node.id) {
                return Err(StructureError::DuplicateId(node.id as usize));
            }
            let me = order.len();
            order.push(node);
            children.push(Vec::new());
            for c in &node.children {
                let cid = walk(c, order, children, seen)?;
                children[me].push(cid);
            }
            Ok(me)
        }
        walk(self, &mut order, &mut children, &mut seen)?;
        Ok((PlaneTree::from_children(children)?, order))
    }

    pub fn attr_u32(&self, key: &str) -> Result<Option<u32>, StructureError> {
        match self.attrs.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse::<u32>()
                .map(Some)
                .map_err(|_| parse_err(self.pos, format!("attribute {key} must be a non-negative integer"))),
        }
    }
}

fn ctree_from_raw(raw: &RawNode) -> Result<PlaneCTree, StructureError> {
    let (tree, order) = raw.flatten()?;
    let mut ctree = PlaneCTree::new(tree);
    let mut colors = Vec::with_capacity(order.len());
    let mut any_color = false;
    for (v, node) in order.iter().enumerate() {
        if let Some(c) = node.attr_u32("const")? {
            ctree.set_constant(c, v)?;
        }
        let color = node.attr_u32("color")?;
        any_color |= color.is_some();
        colors.push(color.unwrap_or(0));
    }
    if any_color {
        ctree = ctree.with_colors(colors)?;
    }
    Ok(ctree)
}

/// Reads one tree from its S-expression text.
pub fn parse_tree(text: &str) -> Result<PlaneCTree, StructureError> {
    let s = sexp::parse_one(text)?;
    ctree_from_raw(&RawNode::from_sexp(&s)?)
}

/// Reads one tree, returning the raw node list as well (for extended attributes).
pub fn parse_raw_tree(text: &str) -> Result<RawNode, StructureError> {
    RawNode::from_sexp(&sexp::parse_one(text)?)
}

fn write_node(out: &mut String, t: &PlaneTree, v: NodeId, attrs: &dyn Fn(NodeId) -> String) {
    let _ = write!(out, "({v}");
    let a = attrs(v);
    if !a.is_empty() {
        out.push(' ');
        out.push_str(&a);
    }
    for &c in t.children(v) {
        out.push(' ');
        write_node(out, t, c, attrs);
    }
    out.push(')');
}

/// Writes a tree with the given per-node attribute string. Ids must already be in preorder.
pub fn write_tree_with(t: &PlaneTree, attrs: &dyn Fn(NodeId) -> String) -> String {
    let mut out = String::new();
    write_node(&mut out, t, t.root(), attrs);
    out
}

pub fn write_tree(t: &PlaneCTree) -> String {
    let (p, map) = t.tree().to_preorder();
    let mut inv = vec![0; map.len()];
    for (old, &new) in map.iter().enumerate() {
        inv[new] = old;
    }
    write_tree_with(&p, &|v| {
        let old = inv[v];
        let mut parts = Vec::new();
        if t.colors().is_some() {
            parts.push(format!("color={}", t.color(old)));
        }
        if let Some(c) = t.constant_index(old) {
            parts.push(format!("const={c}"));
        }
        parts.join(" ")
    })
}

/// Reads `(forest tree+)`; every node needs a `color` attribute.
pub fn parse_forest(text: &str, palette: u32) -> Result<ColoredPlaneForest, StructureError> {
    let s = sexp::parse_one(text)?;
    let items = s.as_list().ok_or_else(|| parse_err(s.pos(), "expected (forest ...)"))?;
    if items.first().and_then(Sexp::as_atom) != Some("forest") {
        return Err(parse_err(s.pos(), "expected (forest ...)"));
    }
    let mut trees = Vec::new();
    let mut colors = Vec::new();
    for item in &items[1..] {
        let raw = RawNode::from_sexp(item)?;
        let (tree, order) = raw.flatten()?;
        let mut c = Vec::with_capacity(order.len());
        for node in order {
            c.push(node.attr_u32("color")?.ok_or_else(|| parse_err(node.pos, "forest node without color"))?);
        }
        trees.push(tree);
        colors.push(c);
    }
    ColoredPlaneForest::new(trees, colors, palette)
}

pub fn write_forest(f: &ColoredPlaneForest) -> String {
    let f = f.normalized();
    let mut out = String::from("(forest");
    let mut offset = 0;
    for (i, t) in f.trees().iter().enumerate() {
        let colors = f.colors(i);
        // ids stay unique across the whole file
        let shifted = write_tree_with(t, &|v| format!("color={}", colors[v]));
        out.push(' ');
        out.push_str(&shift_ids(&shifted, offset));
        offset += t.len();
    }
    out.push(')');
    out
}

fn shift_ids(text: &str, offset: usize) -> String {
    if offset == 0 {
        return text.to_string();
    }
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(i) = rest.find('(') {
        out.push_str(&rest[..=i]);
        rest = &rest[i + 1..];
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let id: usize = rest[..end].parse().unwrap();
        let _ = write!(out, "{}", id + offset);
        rest = &rest[end..];
    }
    out.push_str(rest);
    out
}

fn tokens(line: &str) -> Vec<&str> {
    let line = line.split('#').next().unwrap_or("");
    line.split_whitespace().collect()
}

fn num<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, StructureError> {
    tok.parse().map_err(|_| parse_err(line, format!("bad number '{tok}'")))
}

/// Reads the line-based A-interval graph format. Parse positions are 1-based line numbers.
pub fn parse_interval_graph(text: &str) -> Result<AIntervalGraph, StructureError> {
    let mut palette = None;
    let mut vertices = Vec::new();
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut raw_edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let t = tokens(line);
        match t.as_slice() {
            [] => {}
            ["palette", rest @ ..] => {
                palette = Some(rest.iter().map(|x| num::<u32>(x, ln)).collect::<Result<Vec<_>, _>>()?);
            }
            ["v", id, lo, hi, color] => {
                let label: u32 = num(id, ln)?;
                if index.insert(label, vertices.len()).is_some() {
                    return Err(StructureError::DuplicateId(label as usize));
                }
                vertices.push(IntervalVertex { label, lo: num(lo, ln)?, hi: num(hi, ln)?, color: num(color, ln)? });
            }
            ["e", a, b] => raw_edges.push((num::<u32>(a, ln)?, num::<u32>(b, ln)?, ln)),
            _ => return Err(parse_err(ln, format!("unrecognised line '{line}'"))),
        }
    }
    let palette = palette.ok_or_else(|| parse_err(1, "missing palette header"))?;
    let mut edges = Vec::with_capacity(raw_edges.len());
    for (a, b, ln) in raw_edges {
        let ia = *index.get(&a).ok_or_else(|| parse_err(ln, format!("unknown vertex {a}")))?;
        let ib = *index.get(&b).ok_or_else(|| parse_err(ln, format!("unknown vertex {b}")))?;
        edges.push((ia, ib));
    }
    AIntervalGraph::new(palette, vertices, edges)
}

pub fn write_interval_graph(g: &AIntervalGraph) -> String {
    let mut out = String::from("palette");
    for a in g.palette() {
        let _ = write!(out, " {a}");
    }
    out.push('\n');
    for v in g.vertices() {
        let _ = writeln!(out, "v {} {} {} {}", v.label, v.lo, v.hi, v.color);
    }
    for (a, b) in g.graph().edges() {
        let _ = writeln!(out, "e {} {}", g.vertex(a).label, g.vertex(b).label);
    }
    out
}

pub fn parse_path_decomposition(text: &str) -> Result<PathDecomposition, StructureError> {
    let mut bags = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        bags.push(line.split_whitespace().map(|x| num::<usize>(x, ln + 1)).collect::<Result<Vec<_>, _>>()?);
    }
    Ok(PathDecomposition::new(bags))
}

pub fn write_path_decomposition(p: &PathDecomposition) -> String {
    let mut out = String::new();
    for bag in p.bags() {
        let line: Vec<String> = bag.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

/// Reads `n <count>` followed by `e u v` lines.
pub fn parse_graph(text: &str) -> Result<SimpleGraph, StructureError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        match tokens(line).as_slice() {
            [] => {}
            ["n", c] => n = Some(num::<usize>(c, ln)?),
            ["e", a, b] => edges.push((num(a, ln)?, num(b, ln)?)),
            _ => return Err(parse_err(ln, format!("unrecognised line '{line}'"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(1, "missing 'n <count>' header"))?;
    SimpleGraph::new(n, edges)
}

pub fn write_graph(g: &SimpleGraph) -> String {
    let mut out = format!("n {}\n", g.vertex_count());
    for (a, b) in g.edges() {
        let _ = writeln!(out, "e {a} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_round_trip_with_attributes() {
        let t = parse_tree("(0 const=2 (1 (2)) (3 const=1))").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.constant(2), Some(0));
        assert_eq!(t.constant(1), Some(3));
        let again = parse_tree(&write_tree(&t)).unwrap();
        assert_eq!(again, t);
    }

    #[test]
    fn single_node_file() {
        let t = parse_tree("(7)").unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn duplicate_constant_is_rejected() {
        let err = parse_tree("(0 const=1 (1 const=1))").unwrap_err();
        assert!(matches!(err, StructureError::ConstantsNotInjective(1, _)));
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        assert!(matches!(parse_tree("(0 (0))"), Err(StructureError::DuplicateId(0))));
    }

    #[test]
    fn same_color_intervals_rejected() {
        let err = parse_interval_graph("palette 1\nv 0 0 2 1\nv 1 1 3 1\n").unwrap_err();
        assert_eq!(err.to_string(), "intersecting intervals share color (vertices 0 and 1)");
    }

    #[test]
    fn forest_round_trip() {
        let f = parse_forest("(forest (0 color=1 (1 color=2)) (2 color=2))", 2).unwrap();
        assert_eq!(f.trees().len(), 2);
        let again = parse_forest(&write_forest(&f), 2).unwrap();
        assert_eq!(again, f.normalized());
    }

    #[test]
    fn interval_graph_round_trip() {
        let text = "palette 1 2\nv 0 0 1 1\nv 1 0 2 2\nv 2 1 2 1\ne 0 1\ne 1 2\n";
        let g = parse_interval_graph(text).unwrap();
        assert_eq!(write_interval_graph(&g), text);
    }

    #[test]
    fn path_decomposition_lines() {
        let p = parse_path_decomposition("0 1\n\n1 2\n").unwrap();
        assert_eq!(p.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(write_path_decomposition(&p), "0 1\n1 2\n");
    }
}
