//! Oracles shared by the integration tests. They are written against the
//! public API only and avoid the library's own checking helpers.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use folim::logic::{Formula, Prepared, RelStructure, Term};
use folim::structures::{NodeId, PlaneTree, SimpleGraph};
use num_rational::Ratio;

/// Prints the one-line verdict for an acceptance criterion and returns `pass`.
pub fn verdict(id: u32, name: &str, pass: bool, detail: &str) -> bool {
    println!("criterion {id:>2} [{}] {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}

/// 1-dimensional colour refinement on the disjoint union of `a` and `b`,
/// starting from `init`. Returns stable colours for `a` then `b`.
fn refine(a: &SimpleGraph, b: &SimpleGraph, init: Vec<usize>) -> Vec<usize> {
    let n = a.vertex_count();
    let adj = |v: usize| -> Vec<usize> {
        if v < n {
            a.neighbors(v).collect()
        } else {
            b.neighbors(v - n).map(|w| w + n).collect()
        }
    };
    let total = n + b.vertex_count();
    let adjs: Vec<Vec<usize>> = (0..total).map(adj).collect();
    let mut colors = init;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..total)
            .map(|v| {
                let mut s: Vec<usize> = adjs[v].iter().map(|&w| colors[w]).collect();
                s.sort_unstable();
                (colors[v], s)
            })
            .collect();
        let mut ids = BTreeMap::new();
        for s in &sigs {
            let next = ids.len();
            ids.entry(s.clone()).or_insert(next);
        }
        let new: Vec<usize> = sigs.iter().map(|s| ids[s]).collect();
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&new) == classes(&colors) {
            return new;
        }
        colors = new;
    }
}

/// Graph isomorphism by colour refinement with individualisation.
pub fn isomorphic(a: &SimpleGraph, b: &SimpleGraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return false;
    }
    fn go(a: &SimpleGraph, b: &SimpleGraph, colors: Vec<usize>) -> bool {
        let n = a.vertex_count();
        let colors = refine(a, b, colors);
        let mut count: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (v, &c) in colors.iter().enumerate() {
            let e = count.entry(c).or_default();
            if v < n {
                e.0 += 1;
            } else {
                e.1 += 1;
            }
        }
        if count.values().any(|&(x, y)| x != y) {
            return false;
        }
        // smallest non-singleton class
        let Some((&cls, _)) = count.iter().filter(|(_, &(x, _))| x > 1).min_by_key(|(_, &(x, _))| x) else {
            // discrete colouring: the bijection is forced
            let mut map = vec![0; n];
            for v in 0..n {
                map[v] = (n..2 * n).find(|&w| colors[w] == colors[v]).expect("class has a partner") - n;
            }
            return a.edges().iter().all(|&(x, y)| b.has_edge(map[x], map[y]));
        };
        let fresh = colors.iter().max().expect("nonempty") + 1;
        let v = (0..n).find(|&v| colors[v] == cls).expect("class occurs in a");
        for w in (n..2 * n).filter(|&w| colors[w] == cls) {
            let mut c = colors.clone();
            c[v] = fresh;
            c[w] = fresh;
            if go(a, b, c) {
                return true;
            }
        }
        false
    }
    n == 0 || go(a, b, vec![0; 2 * n])
}

/// Kolmogorov–Smirnov statistic of `xs` against the uniform law on `[0, 1)`.
pub fn ks_uniform(xs: &mut [f64]) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| (x - i as f64 / n).abs().max(((i + 1) as f64 / n - x).abs()))
        .fold(0.0, f64::max)
}

/// Asymptotic 1% critical value of the one-sample KS statistic.
pub fn ks_critical_1pct(n: usize) -> f64 {
    1.628 / (n as f64).sqrt()
}

/// Component sizes of `t` minus `u`, by breadth-first search.
fn components_without(t: &PlaneTree, u: NodeId) -> Vec<usize> {
    let n = t.len();
    let mut seen = vec![false; n];
    seen[u] = true;
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut size = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            size += 1;
            for y in t.parent(x).into_iter().chain(t.children(x).iter().copied()) {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        out.push(size);
    }
    out
}

/// Quadratic oracle: nodes whose two largest components after removal sum to at most `(1 - eps)|T|`.
pub fn brute_major(t: &PlaneTree, eps: Ratio<u64>) -> Vec<NodeId> {
    let n = t.len() as u128;
    let (num, den) = (u128::from(*eps.numer()), u128::from(*eps.denom()));
    (0..t.len())
        .filter(|&u| {
            let mut c = components_without(t, u);
            c.sort_unstable_by(|a, b| b.cmp(a));
            let two = c.iter().take(2).sum::<usize>() as u128;
            two * den <= (den - num) * n
        })
        .collect()
}

/// Sizes of the radius-`r` balls (`r = 0..=3`) around every node of `t` with
/// `removed` deleted, from degree sums in the remaining forest. Entries for
/// removed nodes are zero.
pub fn ball_sizes(t: &PlaneTree, removed: &[NodeId]) -> [Vec<u64>; 4] {
    let n = t.len();
    let mut gone = vec![false; n];
    for &u in removed {
        gone[u] = true;
    }
    let nbrs: Vec<Vec<NodeId>> = (0..n)
        .map(|v| {
            if gone[v] {
                return Vec::new();
            }
            t.parent(v).into_iter().chain(t.children(v).iter().copied()).filter(|&w| !gone[w]).collect()
        })
        .collect();
    let deg: Vec<u64> = nbrs.iter().map(|x| x.len() as u64).collect();
    // s[u] = Σ_{w ~ u} (deg w - 1)
    let s: Vec<u64> = (0..n).map(|u| nbrs[u].iter().map(|&w| deg[w] - 1).sum()).collect();
    let mut b = [vec![0; n], vec![0; n], vec![0; n], vec![0; n]];
    for v in (0..n).filter(|&v| !gone[v]) {
        b[0][v] = 1;
        b[1][v] = 1 + deg[v];
        b[2][v] = b[1][v] + s[v];
        b[3][v] = b[2][v] + nbrs[v].iter().map(|&u| s[u] - (deg[v] - 1)).sum::<u64>();
    }
    b
}

/// Disjoint union of trees as one structure (roots are not linked), with the
/// offset of every tree.
pub fn disjoint_union(trees: &[PlaneTree]) -> (RelStructure, Vec<usize>) {
    let mut parnt = Vec::new();
    let mut succ = Vec::new();
    let mut offsets = Vec::with_capacity(trees.len());
    let mut off = 0;
    for t in trees {
        offsets.push(off);
        for v in 0..t.len() {
            if let Some(p) = t.parent(v) {
                parnt.push((v + off, p + off));
            }
            if let Some(w) = t.next_sibling(v) {
                succ.push((v + off, w + off));
            }
        }
        off += t.len();
    }
    (RelStructure::new(off, parnt, succ, vec![0; off], BTreeMap::new()), offsets)
}

#[derive(Clone, Copy)]
enum Atom {
    Parnt(usize, usize),
    Succ(usize, usize),
    Eq(usize, usize),
}

fn atoms(vars: usize) -> Vec<Atom> {
    let mut out = Vec::new();
    for i in 0..vars {
        for j in 0..vars {
            if i != j {
                out.push(Atom::Parnt(i, j));
                out.push(Atom::Succ(i, j));
            }
            if i < j {
                out.push(Atom::Eq(i, j));
            }
        }
    }
    out
}

const NAMES: [&str; 3] = ["x", "y", "z"];

fn diagram(t: &PlaneTree, vals: &[NodeId]) -> u32 {
    let mut bits = 0;
    for (k, a) in atoms(vals.len()).into_iter().enumerate() {
        let holds = match a {
            Atom::Parnt(i, j) => t.parent(vals[i]) == Some(vals[j]),
            Atom::Succ(i, j) => t.next_sibling(vals[i]) == Some(vals[j]),
            Atom::Eq(i, j) => vals[i] == vals[j],
        };
        if holds {
            bits |= 1 << k;
        }
    }
    bits
}

fn diagram_formula(vars: usize, bits: u32) -> Formula {
    let v = |i: usize| Term::var(NAMES[i]);
    Formula::And(
        atoms(vars)
            .into_iter()
            .enumerate()
            .map(|(k, a)| {
                let f = match a {
                    Atom::Parnt(i, j) => Formula::Parnt(v(i), v(j)),
                    Atom::Succ(i, j) => Formula::Succ(v(i), v(j)),
                    Atom::Eq(i, j) => Formula::Eq(v(i), v(j)),
                };
                if bits >> k & 1 == 1 {
                    f
                } else {
                    Formula::negate(f)
                }
            })
            .collect(),
    )
}

fn tree_neighbors(t: &PlaneTree, v: NodeId) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = t.parent(v).into_iter().chain(t.children(v).iter().copied()).collect();
    out.extend(t.prev_sibling(v));
    out.extend(t.next_sibling(v));
    out
}

/// Explicit local formulas in one free variable `x`, complete for quantifier
/// depth at most 2 on a corpus of uncolored trees without constants:
/// `∃y~x δ(x,y)` for every realised two-variable diagram δ (depth 1) and
/// `∃y~x χ(x,y)` for every realised characteristic formula χ of depth 1
/// (depth 2), where χ fixes δ(x,y) and, for each anchor, which realised
/// three-variable diagrams have a witness `z`.
pub struct LocalFormulaOracle {
    pub depth1: Vec<Formula>,
    pub depth2: Vec<Formula>,
}

impl LocalFormulaOracle {
    pub fn new(corpus: &[PlaneTree]) -> Self {
        let mut d2: BTreeSet<u32> = BTreeSet::new();
        let mut d3x: BTreeSet<u32> = BTreeSet::new();
        let mut d3y: BTreeSet<u32> = BTreeSet::new();
        for t in corpus {
            for x in 0..t.len() {
                for y in tree_neighbors(t, x) {
                    d2.insert(diagram(t, &[x, y]));
                    for z in tree_neighbors(t, x) {
                        d3x.insert(diagram(t, &[x, y, z]));
                    }
                    for z in tree_neighbors(t, y) {
                        d3y.insert(diagram(t, &[x, y, z]));
                    }
                }
            }
        }
        let (d3x, d3y): (Vec<u32>, Vec<u32>) = (d3x.into_iter().collect(), d3y.into_iter().collect());
        let mut classes: BTreeSet<(u32, Vec<bool>, Vec<bool>)> = BTreeSet::new();
        for t in corpus {
            for x in 0..t.len() {
                for y in tree_neighbors(t, x) {
                    let at = |anchor: NodeId, set: &[u32]| -> Vec<bool> {
                        let seen: BTreeSet<u32> =
                            tree_neighbors(t, anchor).into_iter().map(|z| diagram(t, &[x, y, z])).collect();
                        set.iter().map(|d| seen.contains(d)).collect()
                    };
                    classes.insert((diagram(t, &[x, y]), at(x, &d3x), at(y, &d3y)));
                }
            }
        }
        let depth1 = d2.iter().map(|&d| Formula::exists_n("y", "x", diagram_formula(2, d))).collect();
        let depth2 = classes
            .into_iter()
            .map(|(d, wx, wy)| {
                let mut parts = vec![diagram_formula(2, d)];
                for (anchor, set, flags) in [("x", &d3x, &wx), ("y", &d3y, &wy)] {
                    for (&tau, &has) in set.iter().zip(flags) {
                        let e = Formula::exists_n("z", anchor, diagram_formula(3, tau));
                        parts.push(if has { e } else { Formula::negate(e) });
                    }
                }
                Formula::exists_n("y", "x", Formula::And(parts))
            })
            .collect();
        LocalFormulaOracle { depth1, depth2 }
    }

    /// Truth vector of the formulas of depth at most `d` at every node of `s`.
    pub fn vectors(&self, s: &RelStructure, d: u32) -> Vec<Vec<bool>> {
        let fs: Vec<&Formula> = match d {
            0 => Vec::new(),
            1 => self.depth1.iter().collect(),
            _ => self.depth1.iter().chain(&self.depth2).collect(),
        };
        let free = ["x".to_string()];
        let mut out = vec![Vec::with_capacity(fs.len()); folim::logic::Structure::size(s)];
        for f in fs {
            let p = Prepared::new(s, f, &free).expect("oracle formulas are well scoped");
            for (v, row) in out.iter_mut().enumerate() {
                row.push(p.holds(s, &[v]));
            }
        }
        out
    }
}
