mod common;

use std::collections::BTreeMap;

use fintype::comb::{
    clasp_surgery_to_loom, comb_reduce_search, comb_rules, localize_and_reduce, rule, twisted_rules, CombWord,
    Direction, SearchOutcome, TwistedLoom, DEFAULT_DEPTH,
};
use fintype::looms::Sign;
use proptest::prelude::*;

use common::{check_rules, random_comb, random_twisted, rng};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn comb_moves_are_sound(seed in any::<u64>()) {
        let w = random_comb(&mut rng(seed), 9, 0);
        check_rules(w.symbols(), comb_rules(), false).unwrap();
    }

    #[test]
    fn twisted_rules_are_sound(seed in any::<u64>()) {
        let t = random_twisted(&mut rng(seed), 7, 4);
        check_rules(t.symbols(), twisted_rules(), true).unwrap();
    }
}

#[test]
fn every_rule_fires_on_the_sample() {
    let mut hits = BTreeMap::new();
    for seed in 0..1500 {
        let w = random_comb(&mut rng(seed), 9, 0);
        for (k, v) in check_rules(w.symbols(), comb_rules(), false).unwrap() {
            *hits.entry(k).or_insert(0) += v;
        }
        let t = random_twisted(&mut rng(seed), 7, 4);
        for (k, v) in check_rules(t.symbols(), twisted_rules(), true).unwrap() {
            *hits.entry(k).or_insert(0) += v;
        }
    }
    let silent: Vec<_> = comb_rules().iter().chain(twisted_rules()).map(|r| r.name).filter(|n| !hits.contains_key(n)).collect();
    assert!(silent.is_empty(), "never applied: {silent:?}");
}

#[test]
fn sample_path_by_hand() {
    // the eight-step reduction for the sample word, move by move
    let steps: [(&str, Direction, usize); 8] = [
        ("F8", Direction::Forward, 3),
        ("F7", Direction::Forward, 2),
        ("F9", Direction::Backward, 1),
        ("F18", Direction::Backward, 0),
        ("F19", Direction::Backward, 3),
        ("F13", Direction::Forward, 1),
        ("F1", Direction::Forward, 2),
        ("F3", Direction::Forward, 1),
    ];
    let mut w = CombWord::parse("⊂_2 x_1^{-1} x_2^{-1} |_3 x_2 |_1 ⊃_2").unwrap();
    for (name, dir, at) in steps {
        let r = rule(name).unwrap();
        w = fintype::comb::comb_move(&w, r, dir, at, None).unwrap_or_else(|e| panic!("{name}: {e} on {w}"));
    }
    assert_eq!(w, CombWord::trivial(2));
}

#[test]
fn search_finds_short_paths() {
    let fig = CombWord::parse("⊂_2 x_1^{-1} x_2^{-1} |_3 x_2 |_1 ⊃_2").unwrap();
    let SearchOutcome::Found(path) = comb_reduce_search(&fig, DEFAULT_DEPTH) else { panic!("sample word") };
    assert!(path.len() <= 8);
    // replaying the path on the bare word lands on E_2
    let mut w = fig.clone();
    for m in &path {
        w = fintype::comb::comb_move(&w, rule(m.rule).unwrap(), m.dir, m.position, m.free).unwrap();
    }
    assert_eq!(w, CombWord::trivial(2));
    assert_eq!(comb_reduce_search(&CombWord::trivial(3), 0), SearchOutcome::Found(vec![]));
}

#[test]
fn twisted_reduction_ends_in_a_loom() {
    let t = TwistedLoom::parse("⊂_2 0_{2,2}^1 x_1^{-1} x_2^{-1} |_3 +_{2,1}^2 x_2 |_1 ⊃_2").unwrap();
    let SearchOutcome::Found(path) = comb_reduce_search(&t.comb(), DEFAULT_DEPTH) else { panic!() };
    let r = localize_and_reduce(&t, &path).unwrap();
    assert_eq!(r.comb(), CombWord::trivial(2));
    for signs in [[Sign::Plus, Sign::Plus], [Sign::Minus, Sign::Plus]] {
        let l = clasp_surgery_to_loom(&r, &signs).unwrap();
        assert_eq!(l.bars(), 2);
        assert!(l.threads() >= 2);
    }
}

#[test]
fn random_reducible_words_localize() {
    // whatever the search reduces, the threads must follow along
    let mut done = 0;
    for seed in 0..200 {
        let t = random_twisted(&mut rng(seed), 6, 2);
        let SearchOutcome::Found(path) = comb_reduce_search(&t.comb(), 12) else { continue };
        let r = localize_and_reduce(&t, &path).unwrap_or_else(|e| panic!("{t}: {e}"));
        assert!(r.comb().is_trivial());
        assert_eq!(r.comb().rank(), t.comb().rank());
        done += 1;
    }
    assert!(done >= 20, "only {done} reducible samples");
}
