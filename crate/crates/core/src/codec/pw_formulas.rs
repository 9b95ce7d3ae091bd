use super::pw::{color_index, Triple, LEFT, RIGHT};
use super::scheme::{InterpretationScheme, RelationDef};
use crate::logic::{Formula, Term};

/// Decoding formulas over path-width trees colored by [`color_index`].
/// `phi0` has free `x`; `phi_v` and `phi_e` have free `x`, `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct PwFormulas {
    pub phi0: Formula,
    pub phi_v: Formula,
    pub phi_e: Formula,
}

struct Builder {
    a: usize,
    fresh: usize,
}

fn var(x: &str) -> Term {
    Term::var(x)
}

fn any(fs: Vec<Formula>) -> Formula {
    match fs.len() {
        1 => fs.into_iter().next().expect("one element"),
        _ => Formula::Or(fs),
    }
}

impl Builder {
    fn name(&mut self) -> String {
        self.fresh += 1;
        format!("n{}", self.fresh)
    }

    fn colors_where(&self, y: &str, keep: impl Fn(Triple) -> bool) -> Formula {
        let mut fs = Vec::new();
        for x in 0..self.a {
            for xs in 0..1u32 << self.a {
                for z in 0..4u8 {
                    let t = Triple { x, xs, z };
                    if keep(t) {
                        fs.push(Formula::Color(color_index(self.a, t), var(y)));
                    }
                }
            }
        }
        if fs.is_empty() {
            Formula::negate(Formula::Eq(var(y), var(y)))
        } else {
            Formula::Or(fs)
        }
    }

    fn first(&mut self, t: &str) -> Formula {
        let z = self.name();
        Formula::negate(Formula::exists_n(&z, t, Formula::Succ(var(&z), var(t))))
    }

    /// Some node on the first-child path from `s` (at most `d` nodes) satisfies `here`.
    fn down_first(&mut self, s: &str, d: usize, here: &dyn Fn(&mut Builder, &str) -> Formula) -> Formula {
        let mut fs = vec![here(self, s)];
        if d > 1 {
            let t = self.name();
            let first = self.first(&t);
            let rest = self.down_first(&t, d - 1, here);
            fs.push(Formula::exists_n(&t, s, Formula::And(vec![Formula::Parnt(var(&t), var(s)), first, rest])));
        }
        any(fs)
    }

    /// The next sibling of `w` starts a first-child path meeting `here`.
    fn after(&mut self, w: &str, here: &dyn Fn(&mut Builder, &str) -> Formula) -> Formula {
        let s = self.name();
        let path = self.down_first(&s, self.a, here);
        Formula::exists_n(&s, w, Formula::And(vec![Formula::Succ(var(w), var(&s)), path]))
    }

    /// `u` carries `→` and color `x`, `v` carries `←` and color `x`, and `v`
    /// sits on the first-child path after the nearest ancestor-or-self of `u`
    /// where such a node exists.
    fn phi_prime(&mut self, u: &str, v: &str) -> Formula {
        let mut by_color = Vec::new();
        for x in 0..self.a {
            let r = self.colors_where(u, |t| t.x == x && t.z & RIGHT != 0);
            let l = self.colors_where(v, |t| t.x == x && t.z & LEFT != 0);
            let walk = self.climb(u, v, x, self.a);
            by_color.push(Formula::And(vec![r, l, walk]));
        }
        any(by_color)
    }

    fn climb(&mut self, w: &str, v: &str, x: usize, d: usize) -> Formula {
        let target = v.to_string();
        let hit = self.after(w, &move |_, s| Formula::Eq(var(s), var(&target)));
        let mut fs = vec![hit];
        if d > 1 {
            let any_left = self.after(w, &move |b, s| b.colors_where(s, |t| t.x == x && t.z & LEFT != 0));
            let p = self.name();
            let up = self.climb(&p, v, x, d - 1);
            fs.push(Formula::And(vec![
                Formula::negate(any_left),
                Formula::exists_n(&p, w, Formula::And(vec![Formula::Parnt(var(w), var(&p)), up])),
            ]));
        }
        any(fs)
    }

    fn phi_double(&mut self, u: &str, v: &str) -> Formula {
        let fwd = self.phi_prime(u, v);
        let bwd = self.phi_prime(v, u);
        Formula::Or(vec![Formula::Eq(var(u), var(v)), fwd, bwd])
    }

    /// Chain of `|A| - 1` intermediate nodes linked by Φ''.
    fn phi_v(&mut self, u: &str, v: &str) -> Formula {
        fn chain(b: &mut Builder, from: &str, to: &str, left: usize) -> Formula {
            if left == 0 {
                return b.phi_double(from, to);
            }
            let mid = b.name();
            let step = b.phi_double(from, &mid);
            let rest = chain(b, &mid, to, left - 1);
            Formula::exists(&mid, Formula::And(vec![step, rest]))
        }
        chain(self, u, v, self.a - 1)
    }

    /// `x(hi) ∈ X(lo)`.
    fn witness(&self, lo: &str, hi: &str) -> Formula {
        any((0..self.a)
            .map(|x| Formula::And(vec![self.colors_where(hi, |t| t.x == x), self.colors_where(lo, |t| t.contains(x))]))
            .collect())
    }

    /// Strict ancestors (`up`) or descendants of `y` within `d` levels satisfying `k`.
    fn along(&mut self, y: &str, d: usize, up: bool, k: &dyn Fn(&mut Builder, &str) -> Formula) -> Formula {
        let p = self.name();
        let link = if up { Formula::Parnt(var(y), var(&p)) } else { Formula::Parnt(var(&p), var(y)) };
        let mut inner = vec![k(self, &p)];
        if d > 1 {
            inner.push(self.along(&p, d - 1, up, k));
        }
        Formula::exists_n(&p, y, Formula::And(vec![link, any(inner)]))
    }

    fn phi_e(&mut self, u: &str, v: &str) -> Formula {
        let a = self.name();
        let same = self.phi_v(u, &a);
        let (a1, a2, target) = (a.clone(), a.clone(), v.to_string());
        let target2 = target.clone();
        let above =
            self.along(&a, self.a, true, &move |b, p| Formula::And(vec![b.witness(&a1, p), b.phi_v(p, &target)]));
        let below =
            self.along(&a, self.a, false, &move |b, p| Formula::And(vec![b.witness(p, &a2), b.phi_v(p, &target2)]));
        Formula::And(vec![
            Formula::negate(Formula::Eq(var(u), var(v))),
            Formula::exists(&a, Formula::And(vec![same, Formula::Or(vec![above, below])])),
        ])
    }
}

/// Φ_0, Φ_v and Φ_e for a palette of `a ≥ 1` colors.
pub fn pw_formulas(a: usize) -> PwFormulas {
    assert!(a >= 1, "palette must be nonempty");
    let mut b = Builder { a, fresh: 0 };
    let phi0 = b.colors_where("x", |t| t.z & LEFT == 0);
    let phi_v = b.phi_v("x", "y");
    let phi_e = b.phi_e("x", "y");
    PwFormulas { phi0, phi_v, phi_e }
}

/// Scheme with domain Φ_0 and one binary relation `edge` given by Φ_e.
pub fn pw_scheme(a: usize) -> InterpretationScheme {
    let f = pw_formulas(a);
    let edge = RelationDef { name: "edge".into(), vars: vec!["x".into(), "y".into()], formula: f.phi_e };
    InterpretationScheme::new("x", f.phi0, vec![edge]).expect("generated formulas are well scoped")
}
