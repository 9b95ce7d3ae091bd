use super::CodecError;
use crate::structures::{AIntervalGraph, IntervalVertex, PathDecomposition, SimpleGraph};

/// Turns a path decomposition of `g` of width `w` into a `[w+1]`-interval
/// graph: vertex `v` spans `[first bag, last bag + 1)` and colors are assigned
/// greedily by left endpoint. Labels are vertex ids.
pub fn pd_to_interval(g: &SimpleGraph, pd: &PathDecomposition) -> Result<AIntervalGraph, CodecError> {
    pd.validate(g)?;
    let n = g.vertex_count();
    let mut span = vec![(i64::MAX, i64::MIN); n];
    for (i, bag) in pd.bags().iter().enumerate() {
        for &v in bag {
            span[v].0 = span[v].0.min(i as i64);
            span[v].1 = span[v].1.max(i as i64 + 1);
        }
    }
    let k = pd.width().map_or(1, |w| w as u32 + 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (span[v].0, v));
    let mut color = vec![0u32; n];
    let mut open: Vec<usize> = Vec::new();
    for &v in &order {
        open.retain(|&u| span[u].1 > span[v].0);
        let used: Vec<u32> = open.iter().map(|&u| color[u]).collect();
        color[v] = (1..=k).find(|c| !used.contains(c)).expect("load never exceeds width + 1");
        open.push(v);
    }
    let vertices =
        (0..n).map(|v| IntervalVertex { label: v as u32, lo: span[v].0, hi: span[v].1, color: color[v] }).collect();
    Ok(AIntervalGraph::new(1..=k, vertices, g.edges())?)
}

/// Bag `s` holds the vertices whose interval contains segment `s`, for every
/// segment from the first to the last. Vertex ids are positions in `g.vertices()`.
pub fn interval_to_pd(g: &AIntervalGraph) -> PathDecomposition {
    let (Some(first), Some(last)) = (g.first_segment(), g.last_segment()) else {
        return PathDecomposition::new(Vec::new());
    };
    let bags = (first..=last)
        .map(|s| g.vertices().iter().enumerate().filter(|(_, v)| v.lo <= s && s < v.hi).map(|(i, _)| i).collect())
        .collect();
    PathDecomposition::new(bags)
}
