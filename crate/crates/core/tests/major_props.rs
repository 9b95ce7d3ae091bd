mod common;

use std::collections::BTreeSet;

use folim::families::{caterpillar, random_deep_tree, random_tree, star};
use folim::major::{annotate_constants, major_bound, major_nodes, major_nodes_brute_force, stage_block, stage_epsilon};
use folim::structures::PlaneTree;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tree(max: usize) -> impl Strategy<Value = PlaneTree> {
    (1..=max, any::<u64>(), 0.0f64..0.9)
        .prop_map(|(n, seed, bias)| random_deep_tree(n, bias, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn epsilon() -> impl Strategy<Value = Ratio<u64>> {
    (2u64..=64).prop_flat_map(|den| (1..den).prop_map(move |num| Ratio::new(num, den)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn majors_shrink_as_epsilon_grows(t in tree(300), a in epsilon(), b in epsilon()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let wide: BTreeSet<_> = major_nodes(&t, lo).into_iter().collect();
        let narrow: BTreeSet<_> = major_nodes(&t, hi).into_iter().collect();
        prop_assert!(narrow.is_subset(&wide));
        prop_assert!(wide.len() as u128 <= major_bound(lo));
    }

    #[test]
    fn majors_match_both_brute_forces(t in tree(120), eps in epsilon()) {
        let fast = major_nodes(&t, eps);
        prop_assert_eq!(&fast, &major_nodes_brute_force(&t, eps));
        prop_assert_eq!(&fast, &common::brute_major(&t, eps));
    }

    #[test]
    fn annotation_names_every_major(n in 1usize..400, seed in any::<u64>(), stages in 0u32..4) {
        let t = random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed));
        check_annotation(&t, stages);
    }
}

fn check_annotation(t: &PlaneTree, stages: u32) {
    let ann = annotate_constants(std::slice::from_ref(t), stages);
    let ct = &ann.trees[0];
    if stages == 0 {
        assert!(ct.constants().is_empty());
        return;
    }
    if !ann.skipped.is_empty() {
        assert!(t.len() < stage_block(stages).1 as usize);
        return;
    }
    assert_eq!(ct.constants().len() as u32, stage_block(stages).1);
    for k in 0..=stages {
        for u in major_nodes(t, stage_epsilon(k)) {
            assert!(ct.constant_index(u).is_some(), "stage {k} major {u} unnamed");
        }
    }
}

#[test]
fn annotation_on_fixed_shapes() {
    for t in [star(200), caterpillar(60, 3), random_tree(500, &mut ChaCha8Rng::seed_from_u64(3))] {
        for stages in 0..4 {
            check_annotation(&t, stages);
        }
    }
}
