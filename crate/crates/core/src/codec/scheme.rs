use std::collections::{BTreeMap, BTreeSet};

use crate::logic::{parse_formula, Formula, LogicError, Prepared, RelStructure, Structure};
use crate::structures::NodeId;

/// One output relation: a name, its free variables (the arity) and the defining formula.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationDef {
    pub name: String,
    pub vars: Vec<String>,
    pub formula: Formula,
}

/// Domain formula with one free variable plus one formula per output relation.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpretationScheme {
    pub domain_var: String,
    pub domain: Formula,
    pub relations: Vec<RelationDef>,
}

impl InterpretationScheme {
    /// Checks that each formula mentions only its declared variables.
    pub fn new(domain_var: &str, domain: Formula, relations: Vec<RelationDef>) -> Result<Self, LogicError> {
        domain.check_scope(&[domain_var.to_string()])?;
        for r in &relations {
            r.formula.check_scope(&r.vars)?;
        }
        Ok(InterpretationScheme { domain_var: domain_var.to_string(), domain, relations })
    }

    /// Whether relation `name` is defined by a single atom of the same kind on its variables in order.
    pub fn is_trivial(&self, name: &str) -> bool {
        self.relations.iter().any(|r| {
            r.name == name
                && match (&r.formula, r.vars.as_slice()) {
                    (Formula::Parnt(a, b), [x, y]) | (Formula::Succ(a, b), [x, y]) => {
                        *a == crate::logic::Term::Var(x.clone()) && *b == crate::logic::Term::Var(y.clone())
                    }
                    _ => false,
                }
        })
    }
}

/// Result of applying a scheme: the domain (nodes of the input, increasing) and
/// each relation as tuples of domain indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interpreted {
    pub domain: Vec<NodeId>,
    pub relations: BTreeMap<String, BTreeSet<Vec<usize>>>,
}

impl Interpreted {
    pub fn is_empty(&self) -> bool {
        self.domain.is_empty()
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<Vec<usize>>> {
        self.relations.get(name)
    }

    /// Reads `parnt`, `succ` and unary `color<i>` relations as a plane-tree-signature structure.
    pub fn to_rel_structure(&self) -> RelStructure {
        let pairs = |name: &str| -> Vec<(usize, usize)> {
            self.relations.get(name).map_or(Vec::new(), |s| s.iter().map(|t| (t[0], t[1])).collect())
        };
        let mut colors = vec![0; self.domain.len()];
        for (name, tuples) in &self.relations {
            if let Some(i) = name.strip_prefix("color").and_then(|s| s.parse::<u32>().ok()) {
                for t in tuples {
                    colors[t[0]] = i;
                }
            }
        }
        RelStructure::new(self.domain.len(), pairs("parnt"), pairs("succ"), colors, BTreeMap::new())
    }
}

fn tuples(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    (0..if n == 0 && k > 0 { 0 } else { total }).map(move |mut code| {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = code % n;
            code /= n;
        }
        t
    })
}

/// Evaluates the scheme on `s`. An empty domain is not an error.
pub fn apply_interpretation<S: Structure + ?Sized>(
    scheme: &InterpretationScheme,
    s: &S,
) -> Result<Interpreted, LogicError> {
    let dom = Prepared::new(s, &scheme.domain, std::slice::from_ref(&scheme.domain_var))?;
    let domain: Vec<NodeId> = (0..s.size()).filter(|&v| dom.holds(s, &[v])).collect();
    let mut relations = BTreeMap::new();
    for r in &scheme.relations {
        let p = Prepared::new(s, &r.formula, &r.vars)?;
        let mut set = BTreeSet::new();
        let mut nodes = vec![0; r.vars.len()];
        for t in tuples(domain.len(), r.vars.len()) {
            for (slot, &i) in nodes.iter_mut().zip(&t) {
                *slot = domain[i];
            }
            if p.holds(s, &nodes) {
                set.insert(t);
            }
        }
        relations.insert(r.name.clone(), set);
    }
    Ok(Interpreted { domain, relations })
}

fn f(text: &str) -> Formula {
    parse_formula(text).expect("built-in formula parses")
}

/// `x` is the `i`-th child (1-based) of `p`, as a local formula with `x` free.
/// Variables are named after `tag` to stay distinct.
fn ith_child(p: &str, x: &str, i: usize, tag: &str) -> Formula {
    // first child: a child with no predecessor; then i-1 succ steps
    let c1 = format!("{tag}1");
    let mut body = if i == 1 { Formula::Eq(var(&c1), var(x)) } else { Formula::Eq(var(&format!("{tag}{i}")), var(x)) };
    for j in (2..=i).rev() {
        let (prev, cur) = (format!("{tag}{}", j - 1), format!("{tag}{j}"));
        let step = Formula::And(vec![Formula::Succ(var(&prev), var(&cur)), body]);
        body = Formula::exists_n(&cur, &prev, step);
    }
    let first = Formula::And(vec![
        Formula::Parnt(var(&c1), var(p)),
        Formula::negate(Formula::exists_n(&format!("{tag}z"), &c1, Formula::Succ(var(&format!("{tag}z")), var(&c1)))),
        body,
    ]);
    Formula::exists_n(&c1, p, first)
}

fn var(x: &str) -> crate::logic::Term {
    crate::logic::Term::var(x)
}

fn is_leaf(x: &str, tag: &str) -> Formula {
    let y = format!("{tag}l");
    Formula::negate(Formula::exists_n(&y, x, Formula::Parnt(var(&y), var(x))))
}

/// The `i`-th child of `x` exists and is a leaf.
fn ith_child_leaf(x: &str, i: usize, tag: &str) -> Formula {
    let c = format!("{tag}c");
    let child = ith_child(x, &c, i, tag);
    // rebuild as: exists the i-th child c with c a leaf
    wrap_child(child, &c, is_leaf(&c, tag))
}

/// `ith_child(p, c, ..)` ends in `(= last c)`; replace that equality with `extra` on the last child.
fn wrap_child(child: Formula, c: &str, extra: Formula) -> Formula {
    fn go(f: Formula, c: &str, extra: &Formula) -> Formula {
        match f {
            Formula::Eq(a, b) if b == var(c) => {
                let crate::logic::Term::Var(last) = a else { unreachable!("child variables are variables") };
                rename(extra.clone(), c, &last)
            }
            Formula::And(fs) => Formula::And(fs.into_iter().map(|g| go(g, c, extra)).collect()),
            Formula::ExistsN { var, anchor, body } => {
                Formula::ExistsN { var, anchor, body: Box::new(go(*body, c, extra)) }
            }
            other => other,
        }
    }
    go(child, c, &extra)
}

/// Renames free occurrences of variable `from` to `to` (no capture handling needed for generated formulas).
pub(crate) fn rename(f: Formula, from: &str, to: &str) -> Formula {
    let t = |x: crate::logic::Term| match x {
        crate::logic::Term::Var(v) if v == from => var(to),
        other => other,
    };
    let s = |x: String| if x == from { to.to_string() } else { x };
    match f {
        Formula::Parnt(a, b) => Formula::Parnt(t(a), t(b)),
        Formula::Succ(a, b) => Formula::Succ(t(a), t(b)),
        Formula::Color(k, a) => Formula::Color(k, t(a)),
        Formula::Eq(a, b) => Formula::Eq(t(a), t(b)),
        Formula::Not(g) => Formula::negate(rename(*g, from, to)),
        Formula::And(fs) => Formula::And(fs.into_iter().map(|g| rename(g, from, to)).collect()),
        Formula::Or(fs) => Formula::Or(fs.into_iter().map(|g| rename(g, from, to)).collect()),
        Formula::Implies(a, b) => Formula::implies(rename(*a, from, to), rename(*b, from, to)),
        Formula::Exists(v, g) if v == from => Formula::Exists(v, g),
        Formula::Forall(v, g) if v == from => Formula::Forall(v, g),
        Formula::Exists(v, g) => Formula::Exists(v, Box::new(rename(*g, from, to))),
        Formula::Forall(v, g) => Formula::Forall(v, Box::new(rename(*g, from, to))),
        Formula::ExistsN { var: v, anchor, body } => {
            let anchor = s(anchor);
            let body = if v == from { body } else { Box::new(rename(*body, from, to)) };
            Formula::ExistsN { var: v, anchor, body }
        }
        Formula::ForallN { var: v, anchor, body } => {
            let anchor = s(anchor);
            let body = if v == from { body } else { Box::new(rename(*body, from, to)) };
            Formula::ForallN { var: v, anchor, body }
        }
    }
}

/// The scheme reading a `k`-colored plane forest back from its encoding tree.
/// Relations: `parnt`, `succ` (both trivial) and unary `color1..colork`.
pub fn forest_scheme(k: u32) -> InterpretationScheme {
    let domain = f("(and (existsN y x (parnt x y)) (existsN y x (parnt y x)))");
    let mut relations = vec![
        RelationDef { name: "parnt".into(), vars: vec!["x".into(), "y".into()], formula: f("(parnt x y)") },
        RelationDef { name: "succ".into(), vars: vec!["x".into(), "y".into()], formula: f("(succ x y)") },
    ];
    for i in 1..=k as usize {
        let next_absent_or_inner = Formula::negate(ith_child_leaf("x", i + 1, "b"));
        relations.push(RelationDef {
            name: format!("color{i}"),
            vars: vec!["x".into()],
            formula: Formula::And(vec![ith_child_leaf("x", i, "a"), next_absent_or_inner]),
        });
    }
    InterpretationScheme::new("x", domain, relations).expect("forest scheme is well scoped")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::evaluate;
    use crate::structures::PlaneTree;

    #[test]
    fn ith_child_formula() {
        // 0 -> [1, 2, 3]
        let t = PlaneTree::from_children(vec![vec![1, 2, 3], vec![], vec![], vec![]]).unwrap();
        for i in 1..=3 {
            let g = ith_child("p", "x", i, "c");
            for x in 0..4 {
                let asg = [("p".to_string(), 0), ("x".to_string(), x)].into_iter().collect();
                assert_eq!(evaluate(&t, &g, &asg).unwrap(), x == i, "i={i} x={x}");
            }
        }
    }

    #[test]
    fn undirected_tree_and_empty_domain() {
        let t = PlaneTree::from_children(vec![vec![1, 2], vec![], vec![]]).unwrap();
        let edge = RelationDef {
            name: "edge".into(),
            vars: vec!["x".into(), "y".into()],
            formula: f("(or (parnt x y) (parnt y x))"),
        };
        let s = InterpretationScheme::new("x", f("(= x x)"), vec![edge.clone()]).unwrap();
        let out = apply_interpretation(&s, &t).unwrap();
        assert_eq!(out.relation("edge").unwrap().len(), 4);
        let none = InterpretationScheme::new("x", f("(not (= x x))"), vec![edge]).unwrap();
        assert!(apply_interpretation(&none, &t).unwrap().is_empty());
    }

    #[test]
    fn trivial_relations() {
        let s = forest_scheme(2);
        assert!(s.is_trivial("parnt") && s.is_trivial("succ") && !s.is_trivial("color1"));
    }
}
