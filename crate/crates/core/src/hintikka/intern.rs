use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::logic::Structure;
use crate::structures::NodeId;

const UNINTERPRETED: u8 = 0xff;

/// Quantifier-free description of a tuple with respect to the constants `c_1..c_b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Atomic {
    m: u32,
    b: u32,
    /// Per element: color and constant index (0 if not among `c_1..c_b`).
    elems: Vec<(u32, u32)>,
    /// Row-major `m x m`: equality, `parnt`, `succ` bits.
    pairs: Vec<u8>,
    /// Row-major `m x b`: `parnt` and `succ` in both directions, or `UNINTERPRETED`.
    elem_const: Vec<u8>,
    /// Per constant: color plus one, or 0 when uninterpreted.
    consts: Vec<u32>,
    /// Row-major `b x b`: `parnt` and `succ` bits.
    const_pairs: Vec<u8>,
}

fn bits(flags: &[bool]) -> u8 {
    flags.iter().enumerate().fold(0, |acc, (i, &f)| acc | (u8::from(f) << i))
}

impl Atomic {
    pub(crate) fn of<S: Structure + ?Sized>(s: &S, tuple: &[NodeId], b: u32) -> Atomic {
        let m = tuple.len();
        let cs: Vec<Option<NodeId>> = (1..=b).map(|i| s.constant(i)).collect();
        let const_index = |v: NodeId| cs.iter().position(|&c| c == Some(v)).map_or(0, |i| i as u32 + 1);
        let elems = tuple.iter().map(|&v| (s.color(v), const_index(v))).collect();
        let mut pairs = Vec::with_capacity(m * m);
        for &x in tuple {
            for &y in tuple {
                pairs.push(bits(&[x == y, s.parnt(x, y), s.succ(x, y)]));
            }
        }
        let mut elem_const = Vec::with_capacity(m * cs.len());
        for &x in tuple {
            for c in &cs {
                elem_const.push(match *c {
                    None => UNINTERPRETED,
                    Some(c) => bits(&[s.parnt(x, c), s.parnt(c, x), s.succ(x, c), s.succ(c, x)]),
                });
            }
        }
        let consts = cs.iter().map(|c| c.map_or(0, |c| s.color(c) + 1)).collect();
        let mut const_pairs = Vec::with_capacity(cs.len() * cs.len());
        for c in &cs {
            for e in &cs {
                const_pairs.push(match (*c, *e) {
                    (Some(c), Some(e)) => bits(&[s.parnt(c, e), s.succ(c, e)]),
                    _ => 0,
                });
            }
        }
        Atomic { m: m as u32, b, elems, pairs, elem_const, consts, const_pairs }
    }

    /// The same description seen with the smaller constant budget `b`.
    pub(crate) fn project(&self, b: u32) -> Atomic {
        assert!(b <= self.b, "projection can only shrink the constant budget");
        let (ob, nb) = (self.b as usize, b as usize);
        let elems = self.elems.iter().map(|&(col, c)| (col, if c > b { 0 } else { c })).collect();
        let elem_const =
            (0..self.m as usize).flat_map(|i| self.elem_const[i * ob..i * ob + nb].iter().copied()).collect();
        let const_pairs = (0..nb).flat_map(|i| self.const_pairs[i * ob..i * ob + nb].iter().copied()).collect();
        Atomic {
            m: self.m,
            b,
            elems,
            pairs: self.pairs.clone(),
            elem_const,
            consts: self.consts[..nb].to_vec(),
            const_pairs,
        }
    }

    pub(crate) fn budget(&self) -> u32 {
        self.b
    }

    pub(crate) fn to_sexp(&self) -> String {
        let join = |v: Vec<String>| v.join(" ");
        format!(
            "(atomic (elems {}) (pairs {}) (elem-const {}) (consts {}) (const-pairs {}))",
            join(self.elems.iter().map(|(c, k)| format!("{c}:{k}")).collect()),
            join(self.pairs.iter().map(u8::to_string).collect()),
            join(self.elem_const.iter().map(u8::to_string).collect()),
            join(self.consts.iter().map(u32::to_string).collect()),
            join(self.const_pairs.iter().map(u8::to_string).collect()),
        )
    }
}

/// Hash-consed fingerprint: atomic description plus the set of extension types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct TypeKey {
    pub local: bool,
    pub q: u32,
    pub atomic: Atomic,
    /// Sorted and deduplicated ids of the one-point extensions at `q - 1`.
    pub children: Vec<u32>,
}

#[derive(Default)]
struct Table {
    ids: HashMap<Arc<TypeKey>, u32>,
    keys: Vec<Arc<TypeKey>>,
}

fn table() -> &'static Mutex<Table> {
    static TABLE: OnceLock<Mutex<Table>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(Table::default()))
}

pub(crate) fn intern(mut key: TypeKey) -> u32 {
    key.children.sort_unstable();
    key.children.dedup();
    let mut t = table().lock().expect("type table poisoned");
    if let Some(&id) = t.ids.get(&key) {
        return id;
    }
    let id = t.keys.len() as u32;
    let key = Arc::new(key);
    t.keys.push(Arc::clone(&key));
    t.ids.insert(key, id);
    id
}

pub(crate) fn lookup(id: u32) -> Arc<TypeKey> {
    let t = table().lock().expect("type table poisoned");
    Arc::clone(&t.keys[id as usize])
}

/// Re-fingerprints `id` at a smaller depth and constant budget.
pub(crate) fn truncate(id: u32, q: u32, b: u32, memo: &mut HashMap<(u32, u32, u32), u32>) -> u32 {
    if let Some(&r) = memo.get(&(id, q, b)) {
        return r;
    }
    let key = lookup(id);
    assert!(q <= key.q && b <= key.atomic.budget(), "truncation can only shrink a type");
    let r = if q == key.q && b == key.atomic.budget() {
        id
    } else {
        let children =
            if q == 0 { Vec::new() } else { key.children.iter().map(|&c| truncate(c, q - 1, b, memo)).collect() };
        intern(TypeKey { local: key.local, q, atomic: key.atomic.project(b), children })
    };
    memo.insert((id, q, b), r);
    r
}

pub(crate) fn dump(id: u32, out: &mut String) {
    let key = lookup(id);
    out.push_str(&format!("({} {} {}", if key.local { "local" } else { "global" }, key.q, key.atomic.to_sexp()));
    for &c in &key.children {
        out.push(' ');
        dump(c, out);
    }
    out.push(')');
}
