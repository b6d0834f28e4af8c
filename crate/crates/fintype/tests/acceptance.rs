//! One line per acceptance criterion. Exits nonzero if any fails.
//!
//! Run with `cargo test -p fintype --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use fintype::algebra::FormalSum;
use fintype::comb::{comb_rules, twisted_rules};
use fintype::cubes::{monoid_complex_presentation, monoid_ring_oracle, presentation_invariants, MonoidTable};
use fintype::diagrams::{goussarov_s, goussarov_s_minus, goussarov_s_minus_sum, goussarov_s_sum, relation_sum, WordKind};
use fintype::looms::count_looms;
use fintype::vtk::{
    braid_relation_crosscheck, enumerate_cds, evaluate_invariant, u_embed, v_expand, FTable, VirtualBraidWord,
    VtkPresentation,
};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use common::{check_rules, destabilization_leaves, random_comb, random_loom, random_twisted, random_word, rng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dims(n: usize) -> Result<Vec<usize>, String> {
    let pres = VtkPresentation::new(n).map_err(err)?;
    [2, 3, 5, 7].iter().map(|&p| pres.dimension(p).map(|d| d.dim).map_err(err)).collect()
}

fn table() -> Outcome {
    let want = [(2, [3, 3, 3, 3]), (3, [9, 8, 8, 8]), (4, [31, 27, 27, 27])];
    let start = Instant::now();
    for (n, row) in want {
        let got = dims(n)?;
        if got != row {
            return Err(format!("n={n}: got {got:?}, want {row:?}"));
        }
    }
    let t = start.elapsed();
    if t > Duration::from_secs(600) {
        return Err(format!("values match but took {t:.0?}"));
    }
    Ok(format!("n=2..4 for p=2,3,5,7 in {t:.1?}"))
}

fn unknots() -> Outcome {
    let a = VirtualBraidWord::parse("s1 v2").map_err(err)?;
    let b = VirtualBraidWord::parse("v1 s2").map_err(err)?;
    let (va, vb) = (evaluate_invariant(&a, 2, 2).map_err(err)?, evaluate_invariant(&b, 2, 2).map_err(err)?);
    if va == vb {
        return Err("σ1v2 and v1σ2 agree at (2, 2)".into());
    }
    Ok("σ1v2 ≠ v1σ2 at (2, 2)".into())
}

fn loom_count() -> Outcome {
    let start = Instant::now();
    let c = count_looms(2, 2);
    let t = start.elapsed();
    if c != 1728 || t > Duration::from_secs(1) {
        return Err(format!("{c} in {t:?}"));
    }
    Ok(format!("1728 in {t:?}"))
}

fn goussarov() -> Outcome {
    let mut r = rng(400);
    for i in 0..250 {
        let d = random_word(&mut r, 3, 6);
        let n = r.random_range(0..=4);
        let here = FormalSum::single(d.0.as_str().into());
        let s = goussarov_s(&WordKind, &d, n);
        let back = goussarov_s_minus_sum(&WordKind, &s).map_err(err)?;
        // s_- ∘ s is the identity on order ≤ n; above that only s(s_- s) = s is meaningful
        let ok = if d.0.len() <= n { back == here } else { goussarov_s_sum(&WordKind, &back, n).map_err(err)? == s };
        if !ok {
            return Err(format!("s_- s fails on {:?} at n={n} (sample {i})", d.0));
        }
        let there = goussarov_s_sum(&WordKind, &goussarov_s_minus(&WordKind, &d), n).map_err(err)?;
        let want = if d.0.len() <= n { here } else { FormalSum::new() };
        if there != want {
            return Err(format!("s s_- fails on {:?} at n={n} (sample {i})", d.0));
        }
    }
    for i in 0..250 {
        let n = r.random_range(0..=4);
        let extra = r.random_range(0..=6 - (n + 1).min(6));
        let len = n + 1 + extra;
        let a = fintype::diagrams::WordDiagram((0..len).map(|_| ['a', 'b', 'c'][r.random_range(0..3)]).collect());
        let mut parts: Vec<usize> = (0..len).collect();
        parts.shuffle(&mut r);
        let rel = relation_sum(&WordKind, &a, &parts[..extra], n).map_err(err)?;
        if !goussarov_s_sum(&WordKind, &rel, n).map_err(err)?.is_zero() {
            return Err(format!("s(R) ≠ 0 for {:?}, Q={:?}, n={n} (sample {i})", a.0, &parts[..extra]));
        }
    }
    Ok("250 words both ways, 250 relation sums".into())
}

fn monoids() -> Outcome {
    let ms = [
        ("trivial", MonoidTable::trivial()),
        ("Z/2", MonoidTable::cyclic(2)),
        ("Z/3", MonoidTable::cyclic(3)),
        ("Z/2×Z/2", MonoidTable::product(&MonoidTable::cyclic(2), &MonoidTable::cyclic(2))),
    ];
    for (name, m) in ms {
        let m = m.with_all_generators();
        for n in 1..=3 {
            let p = presentation_invariants(&monoid_complex_presentation(&m, n).map_err(err)?).map_err(err)?;
            let o = monoid_ring_oracle(&m, n).map_err(err)?;
            if p != o {
                return Err(format!("{name}, n={n}: presentation {p}, oracle {o}"));
            }
        }
    }
    Ok("4 monoids, n=1..3".into())
}

fn f_identity() -> Outcome {
    let t = FTable::new(20, 10);
    for a1 in 0..=8 {
        for a2 in 0..=8 {
            for b in 0..=8 {
                let conv: BigInt = (0..=b).map(|b1| t.get(a1, b1) * t.get(a2, b - b1)).sum();
                if *t.get(a1 + a2, b + 1) != t.get(a1 + a2 + 1, b + 1) + conv {
                    return Err(format!("a1={a1} a2={a2} b={b}"));
                }
            }
        }
    }
    Ok("a1, a2, b ≤ 8".into())
}

fn v_after_u() -> Outcome {
    let cds = enumerate_cds(4);
    for cd in &cds {
        if v_expand(&u_embed(cd), 4) != FormalSum::single(cd.key()) {
            return Err(format!("v(u(X)) ≠ X for {}", cd.key()));
        }
    }
    Ok(format!("{} diagrams with ≤ 4 chords", cds.len()))
}

fn crosscheck() -> Outcome {
    let mut total = 0;
    for (n, p) in [(2, 2), (3, 2), (2, 3)] {
        let q = VtkPresentation::new(n).and_then(|x| x.quotient(p)).map_err(err)?;
        let rows = braid_relation_crosscheck(4, 6, n, p).map_err(err)?;
        for r in &rows {
            if !q.contains(r).map_err(err)? {
                return Err(format!("({n}, {p}): row outside the span: {r}"));
            }
        }
        total += rows.len();
    }
    Ok(format!("{total} rows over (2,2), (3,2), (2,3)"))
}

fn confluence() -> Outcome {
    let mut r = rng(900);
    for _ in 0..500 {
        let l = random_loom(&mut r, 4, 4);
        let leaves = destabilization_leaves(&l);
        if leaves.len() != 1 || leaves.first() != Some(&l.canonical_form()) {
            return Err(format!("{l} has {} destabilized forms", leaves.len()));
        }
    }
    Ok("500 looms".into())
}

fn rewriting() -> Outcome {
    let mut applications = 0;
    for seed in 0..500 {
        let w = random_comb(&mut rng(10_000 + seed), 9, 0);
        applications += check_rules(w.symbols(), comb_rules(), false)?.values().sum::<usize>();
        let t = random_twisted(&mut rng(20_000 + seed), 7, 4);
        applications += check_rules(t.symbols(), twisted_rules(), true)?.values().sum::<usize>();
    }
    Ok(format!("1000 inputs, {applications} applications"))
}

fn stretch() -> Outcome {
    let start = Instant::now();
    let got = dims(5)?;
    if got != [117, 106, 104, 104] {
        return Err(format!("got {got:?}"));
    }
    Ok(format!("n=5 in {:.1?}", start.elapsed()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("table reproduction", table),
        ("unknot separation", unknots),
        ("loom count", loom_count),
        ("Goussarov identities", goussarov),
        ("monoid oracle", monoids),
        ("f-identity", f_identity),
        ("v∘u identity", v_after_u),
        ("relation completeness", crosscheck),
        ("loom confluence", confluence),
        ("rewriting soundness", rewriting),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    match stretch() {
        Ok(detail) => println!("PASS  * stretch table row: {detail}"),
        Err(detail) => {
            failed += 1;
            println!("FAIL  * stretch table row: {detail}");
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
