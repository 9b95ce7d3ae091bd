use folim::families::{random_forest, random_interval_graph, random_pw, random_tree};
use folim::structures::io::{
    parse_forest, parse_graph, parse_interval_graph, parse_path_decomposition, parse_tree, write_forest, write_graph,
    write_interval_graph, write_path_decomposition, write_tree,
};
use folim::structures::{PlaneCTree, PlaneTree};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tree(max: usize) -> impl Strategy<Value = PlaneTree> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_tree(n, &mut ChaCha8Rng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn removal_components_partition_the_rest(t in tree(80)) {
        for u in 0..t.len() {
            let comps = t.components_after_removal(u);
            prop_assert_eq!(comps.iter().sum::<usize>(), t.len() - 1);
            prop_assert_eq!(comps.len(), t.children(u).len() + usize::from(t.parent(u).is_some()));
            prop_assert!(comps.iter().all(|&c| c > 0));
        }
    }

    #[test]
    fn succ_is_an_injective_partial_function(t in tree(30)) {
        let n = t.len();
        for x in 0..n {
            prop_assert!(!t.succ(x, x));
            prop_assert!((0..n).filter(|&y| t.succ(x, y)).count() <= 1);
            prop_assert!((0..n).filter(|&y| t.succ(y, x)).count() <= 1);
            for y in 0..n {
                if t.succ(x, y) {
                    prop_assert_eq!(t.parent(x), t.parent(y));
                }
            }
        }
    }

    #[test]
    fn parnt_gives_each_non_root_one_parent(t in tree(30)) {
        let n = t.len();
        for x in 0..n {
            let ups = (0..n).filter(|&y| t.parnt(x, y)).count();
            prop_assert_eq!(ups, usize::from(x != t.root()));
        }
    }

    #[test]
    fn segments_are_properly_colored(n in 0usize..40, width in 0usize..5, seed in any::<u64>()) {
        let h = random_interval_graph(n, width, 0.5, &mut ChaCha8Rng::seed_from_u64(seed));
        let (Some(first), Some(last)) = (h.first_segment(), h.last_segment()) else {
            prop_assert_eq!(n, 0);
            return Ok(());
        };
        for s in first..=last {
            let live: Vec<_> = h.vertices().iter().filter(|v| v.lo <= s && s < v.hi).collect();
            let mut colors: Vec<u32> = live.iter().map(|v| v.color).collect();
            colors.sort_unstable();
            colors.dedup();
            prop_assert_eq!(colors.len(), live.len());
            prop_assert!(live.len() <= h.palette().len());
        }
        for (u, v) in h.graph().edges() {
            prop_assert!(h.vertex(u).intersects(h.vertex(v)));
        }
    }

    #[test]
    fn tree_text_round_trips(t in tree(40), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = t.len();
        let colors = (0..n).map(|_| rng.gen_range(1..=4)).collect();
        let mut c = PlaneCTree::new(t).with_colors(colors).unwrap();
        let mut nodes: Vec<usize> = (0..n).collect();
        for i in 1..=rng.gen_range(0..=n.min(3)) as u32 {
            let v = nodes.swap_remove(rng.gen_range(0..nodes.len()));
            c.set_constant(i, v).unwrap();
        }
        let back = parse_tree(&write_tree(&c)).unwrap();
        let (pre, map) = c.tree().to_preorder();
        prop_assert_eq!(back.tree(), &pre);
        for (v, &image) in map.iter().enumerate() {
            prop_assert_eq!(back.color(image), c.color(v));
            prop_assert_eq!(back.constant_index(image), c.constant_index(v));
        }
    }

    #[test]
    fn forest_text_round_trips(seed in any::<u64>()) {
        let f = random_forest(40, 3, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(parse_forest(&write_forest(&f), 3).unwrap(), f.normalized());
    }

    #[test]
    fn graph_texts_round_trip(n in 0usize..40, width in 0usize..4, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (g, pd) = random_pw(n, width, 0.5, &mut rng);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        prop_assert_eq!(parse_path_decomposition(&write_path_decomposition(&pd)).unwrap(), pd);
        let h = random_interval_graph(n, width, 0.5, &mut rng);
        prop_assert_eq!(parse_interval_graph(&write_interval_graph(&h)).unwrap(), h);
    }
}
