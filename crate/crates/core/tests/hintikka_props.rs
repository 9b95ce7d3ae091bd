use std::collections::{BTreeMap, BTreeSet};

use folim::families::{plane_trees_up_to, random_tree};
use folim::hintikka::{k_position, local_type, local_type_reference, structure_equivalent_d, structure_type, Step};
use folim::logic::{parse_formula, Prepared};
use folim::structures::{NodeId, PlaneCTree, PlaneTree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ctree(max: usize) -> impl Strategy<Value = PlaneCTree> {
    (1..=max, any::<u64>(), 0u32..3).prop_map(|(n, seed, consts)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_tree(n, &mut rng);
        let picks: Vec<(u32, NodeId)> = (1..=consts).map(|i| (i, rng.gen_range(0..n))).collect();
        let mut c = PlaneCTree::new(t);
        for (i, v) in picks {
            if c.constant_index(v).is_none() {
                c.set_constant(i, v).unwrap();
            }
        }
        c
    })
}

/// Two-variable diagrams `δ(x, y)` a node can realise in an uncolored tree
/// without constants.
const DIAGRAMS: &[&str] = &[
    "(= x y)",
    "(parnt y x)",
    "(parnt x y)",
    "(succ x y)",
    "(succ y x)",
    "(not (or (= x y) (parnt x y) (parnt y x) (succ x y) (succ y x)))",
];

/// The rank-2 sentences `∃x χ(x)`, one per sign pattern of `∃y δ(x, y)`,
/// that hold in `t`.
fn rank_two_profile(t: &PlaneTree) -> BTreeSet<Vec<bool>> {
    let free = vec!["x".to_string()];
    let checks: Vec<Prepared> = DIAGRAMS
        .iter()
        .map(|d| Prepared::new(t, &parse_formula(&format!("(exists y {d})")).unwrap(), &free).unwrap())
        .collect();
    (0..t.len()).map(|v| checks.iter().map(|p| p.holds(t, &[v])).collect()).collect()
}

#[test]
fn rank_two_structure_types_match_the_sentence_oracle() {
    let corpus = plane_trees_up_to(9, 5000);
    let mut by_type: BTreeMap<u32, BTreeSet<Vec<bool>>> = BTreeMap::new();
    let mut by_profile: BTreeMap<BTreeSet<Vec<bool>>, u32> = BTreeMap::new();
    let mut rank_one = BTreeSet::new();
    for t in &corpus {
        let c = PlaneCTree::new(t.clone());
        rank_one.insert(structure_type(&c, 1));
        let ty = structure_type(&c, 2).id;
        let profile = rank_two_profile(t);
        assert_eq!(*by_type.entry(ty).or_insert_with(|| profile.clone()), profile);
        assert_eq!(*by_profile.entry(profile).or_insert(ty), ty);
    }
    assert_eq!(rank_one.len(), 1);
    assert!(by_type.len() > 10, "only {} classes", by_type.len());

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..2000 {
        let (a, b) = (&corpus[rng.gen_range(0..corpus.len())], &corpus[rng.gen_range(0..corpus.len())]);
        let expected = rank_two_profile(a) == rank_two_profile(b);
        let (ca, cb) = (PlaneCTree::new(a.clone()), PlaneCTree::new(b.clone()));
        assert_eq!(structure_equivalent_d(&ca, &cb, 2, u128::MAX).unwrap(), expected);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn types_refine_with_depth(a in ctree(25), b in ctree(25)) {
        for d in 1..=2u32 {
            for v in 0..a.len() {
                let ta = local_type(&a, v, d);
                prop_assert_eq!(ta.restrict(), Some(local_type(&a, v, d - 1)));
                for w in 0..b.len() {
                    if ta == local_type(&b, w, d) {
                        prop_assert_eq!(local_type(&a, v, d - 1), local_type(&b, w, d - 1));
                    }
                }
            }
        }
    }

    #[test]
    fn fast_types_agree_with_reference(a in ctree(20), b in ctree(20)) {
        for d in 0..=2u32 {
            for v in 0..a.len() {
                for w in 0..b.len() {
                    prop_assert_eq!(
                        local_type(&a, v, d) == local_type(&b, w, d),
                        local_type_reference(&a, v, d) == local_type_reference(&b, w, d)
                    );
                }
            }
        }
    }

    #[test]
    fn positions_are_symmetric(n in 1usize..40, seed in any::<u64>(), k in 0usize..8) {
        let t = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        for v in 0..n {
            for w in 0..n {
                let forward = k_position(&t, v, w, k);
                let back = k_position(&t, w, v, k)
                    .map(|word| word.into_iter().rev().map(Step::reversed).collect::<Vec<_>>());
                prop_assert_eq!(&forward, &back);
                if let Some(word) = forward {
                    prop_assert!(word.len() <= k);
                    let ups = word.iter().filter(|&&s| s == Step::Up).count();
                    let downs = word.iter().filter(|&&s| s == Step::Down).count();
                    prop_assert_eq!(t.depth(v) + downs, t.depth(w) + ups);
                }
            }
        }
    }
}
