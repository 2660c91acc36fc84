use proptest::prelude::*;

use resgraph::families::expected_family;
use resgraph::graph::{automorphism_count, canonical_form, is_isomorphic};
use resgraph::machines::interpret;
use resgraph::randomness::{likelihood_bounds, likelihood_exact, sample_vertex_addition, DegreeDistribution};
use resgraph::trees::{prufer_decode, prufer_encode, sample_ua};
use resgraph::{Graph, InstructionString, MemoryModel, RuleSet};

fn bits(max: usize) -> impl Strategy<Value = InstructionString> {
    prop::collection::vec(any::<bool>(), 1..=max).prop_map(InstructionString::new)
}

fn models() -> impl Strategy<Value = MemoryModel> {
    prop_oneof![
        Just(MemoryModel::NoMemory),
        Just(MemoryModel::FullMemory),
        Just(MemoryModel::FadingMemory(2)),
    ]
}

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| {
            let mut edges = Vec::new();
            let mut k = 0;
            for j in 2..=n {
                for i in 1..j {
                    if mask[k] {
                        edges.push((i, j));
                    }
                    k += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn machine_outputs_grow_by_prefix(model in models(), x in bits(12), r in 0usize..16) {
        let rules = RuleSet::valid_for(model);
        let rule = rules[r % rules.len()];
        let full = interpret(rule, model, &x).unwrap();
        for k in 1..=x.len() {
            let part = interpret(rule, model, &x.prefix(k)).unwrap();
            prop_assert_eq!(&part.graph.graph, &full.graph.graph.prefix(k));
        }
    }

    #[test]
    fn swapped_rule_on_flipped_input_gives_same_graph(model in models(), x in bits(12), r in 0usize..16) {
        let rules = RuleSet::valid_for(model);
        let rule = rules[r % rules.len()];
        let a = interpret(rule, model, &x).unwrap();
        let b = interpret(rule.swapped(), model, &x.flipped()).unwrap();
        prop_assert_eq!(a.graph.graph, b.graph.graph);
    }

    #[test]
    fn machine_agrees_with_expected_family(model in models(), x in bits(10), r in 0usize..16) {
        let rules = RuleSet::valid_for(model);
        let rule = rules[r % rules.len()];
        let got = interpret(rule, model, &x).unwrap().graph;
        prop_assert_eq!(Some(got), expected_family(rule, model, &x));
    }

    #[test]
    fn canonical_form_ignores_labels(g in graph(9), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (1..=g.n()).collect();
        perm.shuffle(&mut resgraph::randomness::rng_from_seed(seed));
        let h = g.relabeled(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert!(is_isomorphic(&g, &h).unwrap());
        prop_assert_eq!(automorphism_count(&g).unwrap(), automorphism_count(&h).unwrap());
    }

    #[test]
    fn likelihood_is_complement_symmetric_and_within_bounds(g in graph(7)) {
        let l = likelihood_exact(&g).unwrap();
        prop_assert_eq!(&l, &likelihood_exact(&g.complement()).unwrap());
        let (lo, hi) = likelihood_bounds(&g).unwrap();
        prop_assert!(&lo <= l.value() && l.value() <= &hi);
    }

    #[test]
    fn vertex_addition_samples_have_positive_likelihood(n in 1usize..=8, seed in any::<u64>()) {
        let g = sample_vertex_addition(n, &DegreeDistribution::Uniform, seed);
        prop_assert!(likelihood_exact(&g).unwrap().to_f64() > 0.0);
    }

    #[test]
    fn prufer_round_trips_sampled_trees(n in 2usize..=40, seed in any::<u64>()) {
        let t = sample_ua(n, seed);
        let seq = prufer_encode(t.graph()).unwrap();
        prop_assert_eq!(seq.len(), n - 2);
        prop_assert_eq!(&prufer_decode(&seq).unwrap(), t.graph());
    }
}
