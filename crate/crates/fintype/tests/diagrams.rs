mod common;

use std::collections::BTreeMap;

use fintype::algebra::{FormalSum, Key};
use fintype::diagrams::{
    goussarov_s, goussarov_s_minus, goussarov_s_minus_sum, goussarov_s_sum, reduce_low_order, relation_sum, WordDiagram,
    WordKind,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{random_word, rng};

/// Subsequence counts by bitmask, independent of the subset walker.
fn naive_s(word: &str, n: usize) -> FormalSum {
    let chars: Vec<char> = word.chars().collect();
    let mut counts: BTreeMap<String, i64> = BTreeMap::new();
    for mask in 0u32..1 << chars.len() {
        if mask.count_ones() as usize <= n {
            let sub: String = (0..chars.len()).filter(|i| mask >> i & 1 == 1).map(|i| chars[i]).collect();
            *counts.entry(sub).or_default() += 1;
        }
    }
    counts.into_iter().map(|(k, c)| (Key::from(k), c.into())).collect()
}

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b', 'c']), 0..=6).prop_map(|v| v.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(250))]

    #[test]
    fn s_counts_subsequences(w in word(), n in 0usize..=4) {
        prop_assert_eq!(goussarov_s(&WordKind, &WordDiagram(w.clone()), n), naive_s(&w, n));
    }

    #[test]
    fn s_and_s_minus_are_inverse(w in word(), n in 0usize..=4) {
        let d = WordDiagram(w.clone());
        let s = goussarov_s(&WordKind, &d, n);
        let back = goussarov_s_minus_sum(&WordKind, &s).unwrap();
        if w.len() <= n {
            prop_assert_eq!(back, FormalSum::single(w.as_str().into()));
        } else {
            // above order n only the image is pinned down
            prop_assert_eq!(goussarov_s_sum(&WordKind, &back, n).unwrap(), s);
        }
        let there = goussarov_s_minus(&WordKind, &d);
        prop_assert_eq!(goussarov_s_sum(&WordKind, &there, w.len()).unwrap(), FormalSum::single(w.as_str().into()));
    }

    #[test]
    fn relation_sums_vanish(seed in any::<u64>(), n in 0usize..=4) {
        let mut r = rng(seed);
        let extra = r.random_range(0..=2);
        let len = n + 1 + extra;
        let a = WordDiagram((0..len).map(|_| ['a', 'b', 'c'][r.random_range(0..3)]).collect());
        let mut parts: Vec<usize> = (0..len).collect();
        parts.shuffle(&mut r);
        let rel = relation_sum(&WordKind, &a, &parts[..extra], n).unwrap();
        prop_assert!(goussarov_s_sum(&WordKind, &rel, n).unwrap().is_zero());
    }
}

#[test]
fn reduce_low_order_contract() {
    let mut r = rng(11);
    for _ in 0..200 {
        let d = random_word(&mut r, 3, 7);
        let n = r.random_range(0..=4);
        let red = reduce_low_order(&WordKind, &d, n).unwrap();
        assert!(red.iter().all(|(k, _)| k.as_bytes().len() <= n));
        assert_eq!(goussarov_s_sum(&WordKind, &red, n).unwrap(), goussarov_s(&WordKind, &d, n), "{d:?} at {n}");
    }
}

#[test]
fn relation_sum_checks_its_arguments() {
    let a = WordDiagram::new("abc");
    assert!(relation_sum(&WordKind, &a, &[0], 1).is_ok());
    assert!(relation_sum(&WordKind, &a, &[0], 2).is_err());
    assert!(relation_sum(&WordKind, &a, &[5], 1).is_err());
}
