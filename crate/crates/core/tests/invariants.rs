use std::collections::HashSet;

use proptest::prelude::*;
use repfree_core::{run, run_bucket, run_garbage, AlgorithmId, GarbagePolicy, Sequence};

fn first_repeat(values: &[u32]) -> Option<usize> {
    let mut seen = HashSet::new();
    values.iter().position(|v| !seen.insert(*v)).map(|p| p + 1)
}

/// Arbitrary inputs, mostly with repeats.
fn any_sequence() -> impl Strategy<Value = Vec<u32>> {
    (1usize..=40).prop_flat_map(|n| prop::collection::vec(1..=n as u32, n))
}

/// Repetition-free inputs.
fn permutation() -> impl Strategy<Value = Vec<u32>> {
    (1u32..=40).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
}

fn either() -> impl Strategy<Value = Vec<u32>> {
    prop_oneof![any_sequence(), permutation()]
}

fn garbage_policy() -> impl Strategy<Value = GarbagePolicy> {
    prop_oneof![
        Just(GarbagePolicy::Zeroed),
        any::<i64>().prop_map(GarbagePolicy::Constant),
        (-3i64..45).prop_map(GarbagePolicy::Constant),
        any::<u64>().prop_map(GarbagePolicy::SeededRandom),
    ]
}

proptest! {
    #[test]
    fn verdicts_match_distinctness(values in either(), policy in garbage_policy()) {
        let s = Sequence::new(values.clone()).unwrap();
        let want = first_repeat(&values);
        for alg in AlgorithmId::ALL {
            let p = (alg == AlgorithmId::Garbage).then_some(policy);
            let m = run(alg, &s, p).unwrap();
            prop_assert_eq!(m.good, want.is_none(), "{}", alg);
            if alg != AlgorithmId::Forward {
                prop_assert_eq!(m.first_repeat_position, want, "{}", alg);
            }
        }
    }

    #[test]
    fn linear_counts(values in either()) {
        let n = values.len() as u64;
        let s = Sequence::new(values.clone()).unwrap();
        let m = run(AlgorithmId::Linear, &s, None).unwrap();
        let processed = first_repeat(&values).map_or(n, |p| p as u64);
        prop_assert_eq!(m.comparisons, processed);
        let stored = if m.good { n } else { processed - 1 };
        prop_assert_eq!(m.assignments, n + stored);
    }

    #[test]
    fn pairwise_scans_on_good_inputs(values in permutation()) {
        let n = values.len() as u64;
        let s = Sequence::new(values).unwrap();
        for alg in [AlgorithmId::Backward, AlgorithmId::Forward] {
            let m = run(alg, &s, None).unwrap();
            prop_assert_eq!(m.comparisons, n * (n - 1) / 2);
            prop_assert_eq!(m.assignments, 0);
        }
    }

    #[test]
    fn forward_position_is_a_repeated_value(values in any_sequence()) {
        let s = Sequence::new(values.clone()).unwrap();
        let m = run(AlgorithmId::Forward, &s, None).unwrap();
        if let Some(p) = m.first_repeat_position {
            prop_assert!(p >= 2 && p <= values.len());
            prop_assert!(values[..p - 1].contains(&values[p - 1]));
        }
    }

    #[test]
    fn tree_assignments_are_nodes(values in either()) {
        let n = values.len() as u64;
        let s = Sequence::new(values.clone()).unwrap();
        let m = run(AlgorithmId::Tree, &s, None).unwrap();
        let nodes = first_repeat(&values).map_or(n, |p| p as u64 - 1);
        prop_assert_eq!(m.assignments, nodes);
        // Each search visits at most as many nodes as the tree holds.
        prop_assert!(m.comparisons <= nodes * (nodes + 1) / 2);
    }

    #[test]
    fn bucket_occupancy_accounts_for_stored_elements(values in either()) {
        let n = values.len();
        let s = Sequence::new(values.clone()).unwrap();
        let (m, t) = run_bucket(&s);
        let stored = first_repeat(&values).map_or(n, |p| p - 1);
        prop_assert_eq!(t.m * t.m >= n, true);
        prop_assert_eq!(t.occupancy.len(), t.m);
        prop_assert_eq!(t.occupancy.iter().map(|&b| b as usize).sum::<usize>(), stored);
        prop_assert!(t.occupancy.iter().all(|&b| b as usize <= t.m));
        prop_assert_eq!(m.assignments, (t.m + 2 * stored) as u64);
        prop_assert!(t.last_row_comparisons <= m.comparisons);
    }

    #[test]
    fn comparison_bounds(values in either(), policy in garbage_policy()) {
        let n = values.len() as u64;
        let s = Sequence::new(values).unwrap();
        for alg in AlgorithmId::ALL {
            let p = (alg == AlgorithmId::Garbage).then_some(policy);
            let m = run(alg, &s, p).unwrap();
            prop_assert!(m.comparisons <= n * (n + 1) / 2, "{}", alg);
            if matches!(alg, AlgorithmId::Linear | AlgorithmId::Garbage) {
                prop_assert!(m.comparisons >= 1 && m.comparisons <= n);
            }
        }
    }

    #[test]
    fn runs_are_deterministic(values in either(), seed in any::<u64>()) {
        let s = Sequence::new(values).unwrap();
        for alg in AlgorithmId::ALL {
            let p = (alg == AlgorithmId::Garbage).then_some(GarbagePolicy::SeededRandom(seed));
            prop_assert_eq!(run(alg, &s, p).unwrap(), run(alg, &s, p).unwrap());
        }
    }

    #[test]
    fn garbage_counts_do_not_depend_on_policy(values in either(), policy in garbage_policy()) {
        let s = Sequence::new(values).unwrap();
        let a = run_garbage(&s, GarbagePolicy::Zeroed);
        let b = run_garbage(&s, policy);
        prop_assert_eq!(a, b);
    }
}
