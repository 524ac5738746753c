use repfree_core::oracle::{self, accumulate_range, enumerate, split, Accumulator, Enumerator};
use repfree_core::{AlgorithmId, GarbagePolicy};

use AlgorithmId::*;

/// Sums over all `n^n` inputs from an independent brute-force count:
/// (n, LINEAR, BACKWARD, FORWARD, TREE comparisons, TREE assignments,
/// BUCKET comparisons).
const FROZEN: [(usize, u64, u64, u64, u64, u64, u64); 6] = [
    (1, 1, 0, 0, 0, 1, 0),
    (2, 8, 4, 4, 4, 6, 4),
    (3, 72, 57, 57, 55, 51, 33),
    (4, 800, 808, 820, 748, 568, 424),
    (5, 10850, 12905, 13325, 11493, 7845, 6965),
    (6, 175392, 236016, 247386, 203040, 129456, 121968),
];

#[test]
fn frozen_comparison_sums() {
    for (n, lin, back, fwd, tree, tree_asg, bucket) in FROZEN {
        let total = (n as u64).pow(n as u32);
        let get = |alg| enumerate(n, alg, None).unwrap();
        let l = get(Linear);
        assert_eq!(l.total_inputs, total);
        assert_eq!(l.comparison_sum, lin, "LINEAR n={n}");
        assert_eq!(get(Backward).comparison_sum, back, "BACKWARD n={n}");
        assert_eq!(get(Forward).comparison_sum, fwd, "FORWARD n={n}");
        let t = get(Tree);
        assert_eq!(t.comparison_sum, tree, "TREE n={n}");
        assert_eq!(t.assignment_sum, tree_asg, "TREE assignments n={n}");
        assert_eq!(get(Bucket).comparison_sum, bucket, "BUCKET n={n}");
        // GARBAGE tests once per processed element, like LINEAR.
        assert_eq!(get(Garbage).comparison_sum, lin, "GARBAGE n={n}");
    }
}

#[test]
fn tree_hand_table_at_three() {
    // Per-input TREE comparisons for (1,1,1), (1,1,2), ..., (3,3,3).
    let hand = [
        1, 1, 1, 2, 3, 3, 2, 3, 3, 3, 2, 2, 1, 1, 1, 2, 2, 3, 3, 3, 2, 3, 3, 2, 1, 1, 1,
    ];
    for (index, want) in hand.iter().enumerate() {
        let i = index as u64;
        let acc = accumulate_range(3, Tree, None, i..i + 1).unwrap();
        assert_eq!(acc.inputs, 1);
        assert_eq!(acc.comparisons, *want, "input {index}");
    }
    let s = enumerate(3, Tree, None).unwrap();
    assert_eq!(s.comparison_sum, 55);
    assert_eq!(s.expected_comparisons_ratio(), (55, 27));
    assert_eq!(s.expected_assignments_ratio(), (17, 9));
}

#[test]
fn partition_does_not_change_sums() {
    for alg in AlgorithmId::ALL {
        let whole = enumerate(5, alg, None).unwrap();
        for k in [1, 2, 7] {
            let by_workers = Enumerator::default()
                .with_workers(k)
                .unwrap()
                .enumerate(5, alg, None)
                .unwrap();
            assert_eq!(by_workers, whole, "{alg} workers={k}");

            let mut acc = Accumulator::default();
            for range in split(whole.total_inputs, k) {
                acc += accumulate_range(5, alg, None, range).unwrap();
            }
            assert_eq!(acc.inputs, whole.total_inputs);
            assert_eq!(acc.comparisons, whole.comparison_sum);
            assert_eq!(acc.assignments, whole.assignment_sum);
            assert_eq!(acc.good, whole.good_count);
        }
    }
}

#[test]
fn split_covers_range() {
    for total in [0u64, 1, 5, 27, 3125] {
        for parts in [1, 2, 7, 40] {
            let ranges = split(total, parts);
            assert_eq!(ranges.len(), parts);
            let mut next = 0;
            for r in &ranges {
                assert_eq!(r.start, next);
                next = r.end;
            }
            assert_eq!(next, total);
        }
    }
}

#[test]
fn good_inputs_are_permutations() {
    let mut factorial = 1u64;
    for n in 1..=7 {
        factorial *= n as u64;
        assert_eq!(oracle::good_count(n), factorial.into());
        for alg in AlgorithmId::ALL {
            assert_eq!(
                enumerate(n, alg, None).unwrap().good_count,
                factorial,
                "{alg} n={n}"
            );
        }
    }
    assert_eq!(oracle::good_count(9), 362_880u64.into());
}

#[test]
fn backward_and_forward_agree_for_small_n() {
    for n in 1..=3 {
        let b = enumerate(n, Backward, None).unwrap();
        let f = enumerate(n, Forward, None).unwrap();
        assert_eq!(b.comparison_sum, f.comparison_sum, "n={n}");
        assert_eq!(b.good_count, f.good_count);
    }
    let b = enumerate(4, Backward, None).unwrap();
    let f = enumerate(4, Forward, None).unwrap();
    assert_eq!(b.expected_comparisons_decimal(6), "3.156250");
    assert_eq!(f.expected_comparisons_decimal(6), "3.203125");
}

#[test]
fn garbage_sums_do_not_depend_on_policy() {
    for n in 1..=5 {
        let zeroed = enumerate(n, Garbage, Some(GarbagePolicy::Zeroed)).unwrap();
        for policy in [
            GarbagePolicy::Constant(-1),
            GarbagePolicy::Constant(1),
            GarbagePolicy::Constant(n as i64),
            GarbagePolicy::SeededRandom(17),
        ] {
            let other = enumerate(n, Garbage, Some(policy)).unwrap();
            assert_eq!(other.good_count, zeroed.good_count, "{policy} n={n}");
            assert_eq!(
                other.comparison_sum, zeroed.comparison_sum,
                "{policy} n={n}"
            );
        }
    }
}

#[test]
fn bucket_stats_small_n() {
    let two = oracle::enumerate_bucket_stats(2).unwrap();
    assert_eq!(two.m, 2);
    assert_eq!(two.occupancy_sums, vec![6, 0]);
    assert_eq!(two.mean_occupancy()[0], 1.5);
    assert_eq!(two.first_repeat_comparison_sum, 2);

    let four = oracle::enumerate_bucket_stats(4).unwrap();
    assert_eq!(four.occupancy_sums, vec![284, 284]);
    assert_eq!(four.mean_occupancy()[0], 1.109375);
    assert_eq!(four.first_repeat_comparison_sum, 272);

    let five = oracle::enumerate_bucket_stats(5).unwrap();
    assert_eq!(five.occupancy_sums, vec![4707, 3138, 0]);
    assert_eq!(five.first_repeat_comparison_sum, 3853);
}

#[test]
fn cap_is_enforced() {
    let e = Enumerator::default().with_cap(3).unwrap();
    assert!(e.enumerate(4, Linear, None).is_err());
    assert!(e.enumerate(3, Linear, None).is_ok());
    assert!(Enumerator::default().with_cap(10).is_err());
    assert!(Enumerator::default().with_workers(0).is_err());
    assert!(enumerate(0, Linear, None).is_err());
    assert!(enumerate(3, Linear, Some(GarbagePolicy::Zeroed)).is_err());
}
