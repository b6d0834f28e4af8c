#![allow(dead_code)]
//! Seeded random inputs shared by the property tests and the acceptance
//! harness. Generators build raw symbol sequences and keep the ones the
//! library's validators accept, so they never lean on the rewrite rules.

use std::collections::{BTreeMap, BTreeSet};

use fintype::comb::{apply_rule, validate_comb, validate_twisted, CombSymbol, CombWord, Direction, Rule, TwistedLoom};
use fintype::diagrams::WordDiagram;
use fintype::looms::{validate_loom, Loom, Side, Sign, Symbol, ThreadKind};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, alphabet: usize, max_len: usize) -> WordDiagram {
    let len = rng.random_range(0..=max_len);
    WordDiagram((0..len).map(|_| (b'a' + rng.random_range(0..alphabet) as u8) as char).collect())
}

fn sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.random_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn kind(rng: &mut ChaCha8Rng) -> ThreadKind {
    ThreadKind::ALL[rng.random_range(0..3)]
}

/// A loom with up to `max_threads` threads and up to `max_bars` bars in a
/// uniformly shuffled order.
pub fn random_loom(rng: &mut ChaCha8Rng, max_threads: usize, max_bars: usize) -> Loom {
    let b = rng.random_range(0..=max_bars);
    let t = if b == 0 { 0 } else { rng.random_range(0..=max_threads) };
    let mut heights: Vec<usize> = (1..=t).collect();
    heights.shuffle(rng);
    let mut symbols: Vec<Symbol> = (0..b).map(|_| Symbol::Bar(sign(rng))).collect();
    for h in heights {
        symbols.push(Symbol::Thread { kind: kind(rng), target: rng.random_range(1..=b), height: h });
    }
    symbols.shuffle(rng);
    validate_loom(symbols).expect("generated loom is valid")
}

/// Every loom reachable by destabilizations that cannot be destabilized
/// further.
pub fn destabilization_leaves(l: &Loom) -> BTreeSet<Loom> {
    let mut leaves = BTreeSet::new();
    let mut stack = vec![l.clone()];
    let mut seen = BTreeSet::new();
    while let Some(cur) = stack.pop() {
        if !seen.insert(cur.clone()) {
            continue;
        }
        let mut moved = false;
        for side in [Side::Left, Side::Right] {
            if cur.can_destabilize(side) {
                moved = true;
                stack.push(cur.destabilize(side).unwrap());
            }
        }
        if !moved {
            leaves.insert(cur);
        }
    }
    leaves
}

/// Strand count before each symbol of a comb-shaped sequence, and after the
/// last one.
pub fn strands_before(symbols: &[CombSymbol]) -> Vec<usize> {
    let mut s = 1;
    let mut out = vec![1];
    for sym in symbols {
        match sym {
            CombSymbol::Cup(_) => s += 2,
            CombSymbol::Cap(_) => s -= 2,
            _ => {}
        }
        out.push(s);
    }
    out
}

/// A valid comb word with at least `min_rank` bars, at most `max_len`
/// symbols before closing caps and at most 7 strands.
pub fn random_comb(rng: &mut ChaCha8Rng, max_len: usize, min_rank: usize) -> CombWord {
    loop {
        let len = rng.random_range(0..=max_len);
        let mut s = 1usize;
        let mut syms = Vec::new();
        for _ in 0..len {
            let mut kinds = vec![4];
            if s + 2 <= 7 {
                kinds.push(0);
            }
            if s >= 3 {
                kinds.push(1);
            }
            if s >= 2 {
                kinds.extend([2, 3]);
            }
            syms.push(match *kinds.choose(rng).unwrap() {
                0 => {
                    s += 2;
                    CombSymbol::Cup(rng.random_range(1..=s - 1))
                }
                1 => {
                    s -= 2;
                    CombSymbol::Cap(rng.random_range(1..=s + 1))
                }
                2 => CombSymbol::X(rng.random_range(1..s)),
                3 => CombSymbol::XInv(rng.random_range(1..s)),
                _ => CombSymbol::Bar(rng.random_range(1..=s)),
            });
        }
        while s > 1 {
            s -= 2;
            syms.push(CombSymbol::Cap(rng.random_range(1..=s + 1)));
        }
        if let Ok(w) = validate_comb(syms) {
            if w.rank() >= min_rank {
                return w;
            }
        }
    }
}

/// A random comb word of rank at least one with up to `max_threads` threads
/// inserted at random positions and strands.
pub fn random_twisted(rng: &mut ChaCha8Rng, max_len: usize, max_threads: usize) -> TwistedLoom {
    let w = random_comb(rng, max_len, 1);
    let counts = strands_before(w.symbols());
    let m = rng.random_range(0..=max_threads);
    let mut heights: Vec<usize> = (1..=m).collect();
    heights.shuffle(rng);
    let mut inserts: Vec<(usize, CombSymbol)> = heights
        .into_iter()
        .map(|h| {
            let at = rng.random_range(0..=w.symbols().len());
            let strand = rng.random_range(1..=counts[at]);
            let target = rng.random_range(1..=w.rank());
            (at, CombSymbol::Thread { kind: kind(rng), strand, target, height: h })
        })
        .collect();
    inserts.sort_by_key(|x| x.0);
    let mut out = Vec::new();
    let mut next = inserts.into_iter().peekable();
    for (k, sym) in w.symbols().iter().enumerate() {
        while let Some((_, t)) = next.next_if(|x| x.0 == k) {
            out.push(t);
        }
        out.push(*sym);
    }
    out.extend(next.map(|x| x.1));
    validate_twisted(out).expect("generated twisted loom is valid")
}

/// Index range for which inserting the rule's right side keeps every
/// symbol on an existing strand, given `s` strands at the insertion point.
fn insertion_indices(name: &str, s: usize) -> std::ops::RangeInclusive<usize> {
    match name {
        "F3" | "F4" => 1..=s,
        "F6" | "F7" => 1..=s.saturating_sub(1),
        other => panic!("{other} does not insert from nothing"),
    }
}

/// Applies every rule everywhere it matches; each result must validate and
/// the opposite direction at the same spot must restore the input.
/// Returns applications per rule name, or the first violation.
pub fn check_rules(symbols: &[CombSymbol], rules: &[Rule], twisted: bool) -> Result<BTreeMap<&'static str, usize>, String> {
    let valid = |s: &[CombSymbol]| {
        if twisted {
            validate_twisted(s.to_vec()).is_ok()
        } else {
            validate_comb(s.to_vec()).is_ok()
        }
    };
    let counts_at = strands_before(symbols);
    let mut hits = BTreeMap::new();
    for r in rules {
        for dir in [Direction::Forward, Direction::Backward] {
            let mut tries = Vec::new();
            if r.is_empty(dir) {
                for (at, &s) in counts_at.iter().enumerate() {
                    tries.extend(insertion_indices(r.name, s).map(|free| (at, Some(free))));
                }
            } else {
                tries.extend((0..symbols.len()).map(|at| (at, None)));
            }
            for (at, free) in tries {
                let a = match apply_rule(symbols, r, dir, at, free) {
                    Ok(a) => a,
                    Err(_) if free.is_none() => continue,
                    Err(e) => return Err(format!("{} {dir:?} insertion at {at} failed: {e}", r.name)),
                };
                if !valid(&a.symbols) {
                    return Err(format!("{} {dir:?} at {at} on {symbols:?} gave {:?}", r.name, a.symbols));
                }
                let back = apply_rule(&a.symbols, r, dir.flip(), at, a.index).map_err(|e| format!("{} undo: {e}", r.name))?;
                if back.symbols != symbols {
                    return Err(format!("{} {dir:?} at {at} on {symbols:?} does not invert", r.name));
                }
                *hits.entry(r.name).or_insert(0) += 1;
            }
        }
    }
    Ok(hits)
}
