use std::collections::{BTreeSet, HashSet};

use super::StructureError;

/// Undirected graph on vertices `0..n` without loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<BTreeSet<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, StructureError> {
        let mut adjacency = vec![BTreeSet::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(StructureError::NodeOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(StructureError::Loop(u));
            }
            if !adjacency[u].insert(v) {
                return Err(StructureError::ParallelEdge(u, v));
            }
            adjacency[v].insert(u);
        }
        Ok(SimpleGraph { adjacency })
    }

    pub fn empty(n: usize) -> Self {
        SimpleGraph { adjacency: vec![BTreeSet::new(); n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency.iter().enumerate().flat_map(|(u, ns)| ns.range(u + 1..).map(move |&v| (u, v))).collect()
    }

    /// Graph with vertex `v` renamed to `map[v]`.
    pub fn relabel(&self, map: &[usize]) -> SimpleGraph {
        let edges = self.edges().into_iter().map(|(u, v)| (map[u], map[v]));
        SimpleGraph::new(self.vertex_count(), edges).expect("bijective relabelling")
    }
}

/// One vertex of an A-interval graph: the half-open interval `[lo, hi)` and a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalVertex {
    pub label: u32,
    pub lo: i64,
    pub hi: i64,
    pub color: u32,
}

impl IntervalVertex {
    pub fn intersects(&self, other: &IntervalVertex) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }

    pub fn len(&self) -> i64 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi <= self.lo
    }
}

/// Semi-interval graph whose intervals are properly colored by the palette.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AIntervalGraph {
    palette: Vec<u32>,
    vertices: Vec<IntervalVertex>,
    graph: SimpleGraph,
}

impl AIntervalGraph {
    pub fn new(
        palette: impl IntoIterator<Item = u32>,
        vertices: Vec<IntervalVertex>,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, StructureError> {
        let palette: Vec<u32> = palette.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let graph = SimpleGraph::new(vertices.len(), edges)?;
        let mut labels = HashSet::new();
        for (i, v) in vertices.iter().enumerate() {
            if v.lo >= v.hi {
                return Err(StructureError::EmptyInterval(v.label));
            }
            if palette.binary_search(&v.color).is_err() {
                return Err(StructureError::ColorOutOfPalette { color: v.color, palette: palette.len() as u32 });
            }
            if !labels.insert(v.label) {
                return Err(StructureError::DuplicateId(v.label as usize));
            }
            for j in graph.neighbors(i) {
                if !v.intersects(&vertices[j]) {
                    return Err(StructureError::EdgeBetweenDisjoint(v.label, vertices[j].label));
                }
            }
        }
        // sweep by left endpoint: only currently open intervals can intersect
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by_key(|&i| (vertices[i].lo, i));
        let mut open: Vec<usize> = Vec::new();
        for &i in &order {
            let vi = vertices[i];
            open.retain(|&j| vertices[j].hi > vi.lo);
            if let Some(&j) = open.iter().find(|&&j| vertices[j].color == vi.color) {
                return Err(StructureError::SameColorIntersect(vertices[j].label, vi.label));
            }
            open.push(i);
        }
        Ok(AIntervalGraph { palette, vertices, graph })
    }

    pub fn palette(&self) -> &[u32] {
        &self.palette
    }

    pub fn vertices(&self) -> &[IntervalVertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &IntervalVertex {
        &self.vertices[i]
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn first_segment(&self) -> Option<i64> {
        self.vertices.iter().map(|v| v.lo).min()
    }

    pub fn last_segment(&self) -> Option<i64> {
        self.vertices.iter().map(|v| v.hi - 1).max()
    }

    /// Largest number of intervals containing a single segment.
    pub fn max_load(&self) -> usize {
        let mut events: Vec<(i64, i32)> = self.vertices.iter().flat_map(|v| [(v.lo, 1), (v.hi, -1)]).collect();
        events.sort();
        let (mut cur, mut best) = (0i32, 0i32);
        for (_, d) in events {
            cur += d;
            best = best.max(cur);
        }
        best as usize
    }
}

/// Sequence of bags of vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathDecomposition {
    bags: Vec<Vec<usize>>,
}

impl PathDecomposition {
    pub fn new(bags: Vec<Vec<usize>>) -> Self {
        let bags = bags.into_iter().map(|b| b.into_iter().collect::<BTreeSet<_>>().into_iter().collect()).collect();
        PathDecomposition { bags }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    /// Max bag size minus one; `None` for an empty decomposition.
    pub fn width(&self) -> Option<usize> {
        self.bags.iter().map(Vec::len).max().map(|m| m.saturating_sub(1))
    }

    /// Checks that this is a path decomposition of `g`.
    pub fn validate(&self, g: &SimpleGraph) -> Result<(), StructureError> {
        let n = g.vertex_count();
        let mut first = vec![None; n];
        let mut last = vec![0; n];
        let mut count = vec![0usize; n];
        for (i, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v >= n {
                    return Err(StructureError::NodeOutOfRange(v));
                }
                first[v].get_or_insert(i);
                last[v] = i;
                count[v] += 1;
            }
        }
        for v in 0..n {
            match first[v] {
                None => return Err(StructureError::VertexNotCovered(v)),
                Some(f) if last[v] - f + 1 != count[v] => return Err(StructureError::NonContiguousBag(v)),
                _ => {}
            }
        }
        for (u, v) in g.edges() {
            let covered = first[u].unwrap().max(first[v].unwrap()) <= last[u].min(last[v]);
            if !covered {
                return Err(StructureError::EdgeNotCovered(u, v));
            }
        }
        Ok(())
    }
}
