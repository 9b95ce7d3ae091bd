use std::collections::BTreeMap;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Formula, LogicError, Structure, Term};
use crate::structures::NodeId;

#[derive(Debug, Clone, Copy)]
enum Arg {
    Slot(usize),
    Node(NodeId),
}

#[derive(Debug, Clone)]
enum Compiled {
    Parnt(Arg, Arg),
    Succ(Arg, Arg),
    Color(u32, Arg),
    /// A disjunction of color atoms on one term; sorted.
    ColorIn(Vec<u32>, Arg),
    Eq(Arg, Arg),
    Not(Box<Compiled>),
    And(Vec<Compiled>),
    Or(Vec<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Exists(usize, Box<Compiled>),
    Forall(usize, Box<Compiled>),
    ExistsN(usize, usize, Box<Compiled>),
    ForallN(usize, usize, Box<Compiled>),
}

/// A formula with variables resolved to slots and constants to nodes of one structure.
#[derive(Debug, Clone)]
pub struct Prepared {
    root: Compiled,
    slots: usize,
    free: Vec<String>,
}

struct Compiler<'a, S: ?Sized> {
    s: &'a S,
    scope: Vec<(String, usize)>,
    slots: usize,
}

fn color_disjunction(fs: &[Formula]) -> Option<(Vec<u32>, &Term)> {
    let mut term = None;
    let mut ks = Vec::with_capacity(fs.len());
    for f in fs {
        match f {
            Formula::Color(k, t) if term.is_none_or(|u| u == t) => {
                term = Some(t);
                ks.push(*k);
            }
            _ => return None,
        }
    }
    term.map(|t| (ks, t))
}

impl<S: Structure + ?Sized> Compiler<'_, S> {
    fn lookup(&self, name: &str) -> Result<usize, LogicError> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|&(_, i)| i)
            .ok_or_else(|| LogicError::UnboundVariable(name.to_string()))
    }

    fn term(&self, t: &Term) -> Result<Arg, LogicError> {
        match t {
            Term::Var(x) => self.lookup(x).map(Arg::Slot),
            Term::Const(i) => self.s.constant(*i).map(Arg::Node).ok_or(LogicError::UninterpretedConstant(*i)),
        }
    }

    fn bind<T>(
        &mut self,
        var: &str,
        f: impl FnOnce(&mut Self, usize) -> Result<T, LogicError>,
    ) -> Result<T, LogicError> {
        let slot = self.slots;
        self.slots += 1;
        self.scope.push((var.to_string(), slot));
        let r = f(self, slot);
        self.scope.pop();
        r
    }

    fn go(&mut self, f: &Formula) -> Result<Compiled, LogicError> {
        Ok(match f {
            Formula::Parnt(a, b) => Compiled::Parnt(self.term(a)?, self.term(b)?),
            Formula::Succ(a, b) => Compiled::Succ(self.term(a)?, self.term(b)?),
            Formula::Color(k, t) => Compiled::Color(*k, self.term(t)?),
            Formula::Eq(a, b) => Compiled::Eq(self.term(a)?, self.term(b)?),
            Formula::Not(g) => Compiled::Not(Box::new(self.go(g)?)),
            Formula::And(fs) => Compiled::And(fs.iter().map(|g| self.go(g)).collect::<Result<_, _>>()?),
            Formula::Or(fs) => match color_disjunction(fs) {
                Some((mut ks, t)) => {
                    ks.sort_unstable();
                    ks.dedup();
                    Compiled::ColorIn(ks, self.term(t)?)
                }
                None => Compiled::Or(fs.iter().map(|g| self.go(g)).collect::<Result<_, _>>()?),
            },
            Formula::Implies(a, b) => Compiled::Implies(Box::new(self.go(a)?), Box::new(self.go(b)?)),
            Formula::Exists(v, g) => self.bind(v, |c, s| Ok(Compiled::Exists(s, Box::new(c.go(g)?))))?,
            Formula::Forall(v, g) => self.bind(v, |c, s| Ok(Compiled::Forall(s, Box::new(c.go(g)?))))?,
            Formula::ExistsN { var, anchor, body } => {
                let a = self.lookup(anchor).map_err(|_| LogicError::UnboundAnchor(anchor.clone()))?;
                self.bind(var, |c, s| Ok(Compiled::ExistsN(s, a, Box::new(c.go(body)?))))?
            }
            Formula::ForallN { var, anchor, body } => {
                let a = self.lookup(anchor).map_err(|_| LogicError::UnboundAnchor(anchor.clone()))?;
                self.bind(var, |c, s| Ok(Compiled::ForallN(s, a, Box::new(c.go(body)?))))?
            }
        })
    }
}

impl Prepared {
    /// Resolves `f` against `s`. `free` fixes the order of the free variables;
    /// it must contain every free variable of `f` and may contain more.
    pub fn new<S: Structure + ?Sized>(s: &S, f: &Formula, free: &[String]) -> Result<Prepared, LogicError> {
        let mut c = Compiler { s, scope: Vec::new(), slots: 0 };
        for name in free {
            let slot = c.slots;
            c.slots += 1;
            c.scope.push((name.clone(), slot));
        }
        let root = c.go(f)?;
        Ok(Prepared { root, slots: c.slots, free: free.to_vec() })
    }

    pub fn arity(&self) -> usize {
        self.free.len()
    }

    /// Evaluates with the free variables bound to `tuple` in declared order.
    pub fn holds<S: Structure + ?Sized>(&self, s: &S, tuple: &[NodeId]) -> bool {
        assert_eq!(tuple.len(), self.free.len(), "tuple length must match the free variables");
        let mut env = vec![0; self.slots];
        env[..tuple.len()].copy_from_slice(tuple);
        let mut ctx = Ctx { s, env, scratch: Vec::new() };
        ctx.eval(&self.root)
    }
}

struct Ctx<'a, S: ?Sized> {
    s: &'a S,
    env: Vec<NodeId>,
    scratch: Vec<Vec<NodeId>>,
}

impl<S: Structure + ?Sized> Ctx<'_, S> {
    fn arg(&self, a: Arg) -> NodeId {
        match a {
            Arg::Slot(i) => self.env[i],
            Arg::Node(v) => v,
        }
    }

    fn neighbours(&mut self, anchor: usize) -> Vec<NodeId> {
        let mut buf = self.scratch.pop().unwrap_or_default();
        self.s.neighbors(self.env[anchor], &mut buf);
        buf
    }

    fn eval(&mut self, f: &Compiled) -> bool {
        match f {
            Compiled::Parnt(a, b) => self.s.parnt(self.arg(*a), self.arg(*b)),
            Compiled::Succ(a, b) => self.s.succ(self.arg(*a), self.arg(*b)),
            Compiled::Color(k, a) => self.s.color(self.arg(*a)) == *k,
            Compiled::ColorIn(ks, a) => ks.binary_search(&self.s.color(self.arg(*a))).is_ok(),
            Compiled::Eq(a, b) => self.arg(*a) == self.arg(*b),
            Compiled::Not(g) => !self.eval(g),
            Compiled::And(fs) => fs.iter().all(|g| self.eval(g)),
            Compiled::Or(fs) => fs.iter().any(|g| self.eval(g)),
            Compiled::Implies(a, b) => !self.eval(a) || self.eval(b),
            Compiled::Exists(slot, g) => (0..self.s.size()).any(|v| {
                self.env[*slot] = v;
                self.eval(g)
            }),
            Compiled::Forall(slot, g) => (0..self.s.size()).all(|v| {
                self.env[*slot] = v;
                self.eval(g)
            }),
            Compiled::ExistsN(slot, anchor, g) => {
                let ns = self.neighbours(*anchor);
                let r = ns.iter().any(|&v| {
                    self.env[*slot] = v;
                    self.eval(g)
                });
                self.scratch.push(ns);
                r
            }
            Compiled::ForallN(slot, anchor, g) => {
                let ns = self.neighbours(*anchor);
                let r = ns.iter().all(|&v| {
                    self.env[*slot] = v;
                    self.eval(g)
                });
                self.scratch.push(ns);
                r
            }
        }
    }
}

/// Truth of `f` in `s` under `asg`, which must bind every free variable.
pub fn evaluate<S: Structure + ?Sized>(s: &S, f: &Formula, asg: &BTreeMap<String, NodeId>) -> Result<bool, LogicError> {
    let names: Vec<String> = asg.keys().cloned().collect();
    let tuple: Vec<NodeId> = asg.values().copied().collect();
    if let Some(&v) = tuple.iter().find(|&&v| v >= s.size()) {
        return Err(LogicError::NodeOutOfRange(v));
    }
    Ok(Prepared::new(s, f, &names)?.holds(s, &tuple))
}

/// Worker count for tuple enumeration: `FOLIM_THREADS` or the available parallelism.
pub fn worker_count() -> usize {
    std::env::var("FOLIM_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, usize::from))
}

fn count_with_prefix<S: Structure + ?Sized>(s: &S, p: &Prepared, first: NodeId) -> u128 {
    let k = p.arity();
    let n = s.size();
    let mut tuple = vec![0; k];
    tuple[0] = first;
    let mut count = 0u128;
    loop {
        if p.holds(s, &tuple) {
            count += 1;
        }
        // odometer over positions 1..k
        let mut i = k;
        loop {
            i -= 1;
            if i == 0 {
                return count;
            }
            tuple[i] += 1;
            if tuple[i] < n {
                break;
            }
            tuple[i] = 0;
        }
    }
}

/// Number of `k`-tuples satisfying `f`, where `free` lists the `k` variables in order.
pub fn satisfying_count<S: Structure + ?Sized>(s: &S, f: &Formula, free: &[String]) -> Result<u128, LogicError> {
    let p = Prepared::new(s, f, free)?;
    let n = s.size();
    if free.is_empty() {
        return Ok(u128::from(p.holds(s, &[])));
    }
    let workers = worker_count().min(n).max(1);
    if workers == 1 || n.saturating_pow(free.len() as u32) < 4096 {
        return Ok((0..n).map(|v| count_with_prefix(s, &p, v)).sum());
    }
    let total = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let p = &p;
                scope.spawn(move || (w..n).step_by(workers).map(|v| count_with_prefix(s, p, v)).sum::<u128>())
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("pairing worker panicked")).sum()
    });
    Ok(total)
}

/// Exact Stone pairing: the fraction of `k`-tuples satisfying `f`.
/// `free` defaults to the free variables of `f` in order of first occurrence.
pub fn stone_pairing<S: Structure + ?Sized>(
    s: &S,
    f: &Formula,
    free: Option<&[String]>,
) -> Result<Ratio<u128>, LogicError> {
    let owned;
    let free = match free {
        Some(v) => v,
        None => {
            owned = f.free_vars();
            &owned
        }
    };
    if s.size() == 0 {
        return Err(LogicError::EmptyStructure);
    }
    let count = satisfying_count(s, f, free)?;
    let total = (s.size() as u128).checked_pow(free.len() as u32).ok_or(LogicError::TupleSpaceTooLarge)?;
    Ok(Ratio::new(count, total))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarlo {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
}

/// Monte-Carlo estimate of the Stone pairing from uniformly sampled tuples.
pub fn stone_pairing_mc<S: Structure + ?Sized>(
    s: &S,
    f: &Formula,
    free: Option<&[String]>,
    samples: u64,
    seed: u64,
) -> Result<MonteCarlo, LogicError> {
    if samples == 0 {
        return Err(LogicError::NoSamples);
    }
    if s.size() == 0 {
        return Err(LogicError::EmptyStructure);
    }
    let free = free.map_or_else(|| f.free_vars(), <[String]>::to_vec);
    let p = Prepared::new(s, f, &free)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tuple = vec![0; free.len()];
    let mut hits = 0u64;
    for _ in 0..samples {
        for x in tuple.iter_mut() {
            *x = rng.gen_range(0..s.size());
        }
        if p.holds(s, &tuple) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    let stderr = (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(MonteCarlo { estimate, stderr, samples })
}
