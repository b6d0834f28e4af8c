//! Quick oracle and property checks across every module.

use num_bigint::BigInt;
use serde::Serialize;

use fintype::algebra::FormalSum;
use fintype::comb::{comb_reduce_search, localize_and_reduce, CombWord, SearchOutcome, TwistedLoom, DEFAULT_DEPTH};
use fintype::cubes::{monoid_complex_presentation, monoid_ring_oracle, presentation_invariants, MonoidTable};
use fintype::diagrams::{goussarov_s, goussarov_s_minus_sum, WordDiagram, WordKind};
use fintype::looms::{count_looms, enumerate_looms, simplify, GaussCode, Side, Sign};
use fintype::vtk::{enumerate_cds, u_embed, v_expand, FTable, VirtualBraidWord};

use crate::cache::MatrixCache;

/// Deliberate corruptions used to check that the suite has teeth.
#[derive(Clone, Copy, Debug, Default)]
pub struct Faults {
    /// Perturbs `f(2, 1)` before checking the f-identity.
    pub wrong_f21: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

type Check = fn(&MatrixCache, Faults) -> Result<(), String>;

const CHECKS: [(&str, Check); 10] = [
    ("f-identity", f_identity),
    ("v-u-identity", v_after_u),
    ("vtk-dims-rank-3", vtk_dims),
    ("unknot-separation", unknot_separation),
    ("loom-count", loom_count),
    ("loom-stabilization", loom_stabilization),
    ("gauss-simplify", gauss_simplify),
    ("goussarov-inverse", goussarov_inverse),
    ("monoid-oracle", monoid_oracle),
    ("comb-reduction", comb_reduction),
];

pub fn run(cache: &MatrixCache, faults: Faults) -> Vec<CheckResult> {
    CHECKS
        .iter()
        .map(|&(name, check)| {
            let r = check(cache, faults);
            CheckResult { name, pass: r.is_ok(), detail: r.err() }
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn f_identity(_: &MatrixCache, faults: Faults) -> Result<(), String> {
    let t = FTable::new(20, 10);
    let f = |a: u32, b: u32| {
        let v = t.get(a, b).clone();
        if faults.wrong_f21 && (a, b) == (2, 1) {
            v + 1
        } else {
            v
        }
    };
    for a1 in 0..=8 {
        for a2 in 0..=8 {
            for b in 0..=8 {
                let sum: BigInt = (0..=b).map(|b1| f(a1, b1) * f(a2, b - b1)).sum();
                let rhs = f(a1 + a2 + 1, b + 1) + sum;
                ensure(f(a1 + a2, b + 1) == rhs, || format!("fails at a1={a1} a2={a2} b={b}"))?;
            }
        }
    }
    Ok(())
}

fn v_after_u(_: &MatrixCache, _: Faults) -> Result<(), String> {
    for cd in enumerate_cds(3) {
        let got = v_expand(&u_embed(&cd), 3);
        ensure(got == FormalSum::single(cd.key()), || format!("v(u(X)) != X for {}", cd.key()))?;
    }
    Ok(())
}

fn vtk_dims(cache: &MatrixCache, _: Faults) -> Result<(), String> {
    let (pres, _) = cache.presentation(3).map_err(|e| e.to_string())?;
    let got: Vec<usize> =
        [2, 3, 5, 7].iter().map(|&p| pres.dimension(p).map(|d| d.dim)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(got == [9, 8, 8, 8], || format!("rank-3 dimensions {got:?}"))
}

fn unknot_separation(cache: &MatrixCache, _: Faults) -> Result<(), String> {
    let (pres, _) = cache.presentation(2).map_err(|e| e.to_string())?;
    let q = pres.quotient(2).map_err(|e| e.to_string())?;
    let a = VirtualBraidWord::parse("s1 v2").map_err(|e| e.to_string())?;
    let b = VirtualBraidWord::parse("v1 s2").map_err(|e| e.to_string())?;
    let (va, vb) = (q.evaluate(&a).map_err(|e| e.to_string())?, q.evaluate(&b).map_err(|e| e.to_string())?);
    ensure(va != vb, || "σ1v2 and v1σ2 agree at (2, 2)".into())
}

fn loom_count(_: &MatrixCache, _: Faults) -> Result<(), String> {
    ensure(count_looms(2, 2) == 1728, || format!("count_looms(2, 2) = {}", count_looms(2, 2)))
}

fn loom_stabilization(_: &MatrixCache, _: Faults) -> Result<(), String> {
    for l in enumerate_looms(1, 2).map_err(|e| e.to_string())? {
        let c = l.canonical_form();
        for side in [Side::Left, Side::Right] {
            for sign in [Sign::Plus, Sign::Minus] {
                let s = l.stabilize(side, sign).canonical_form();
                ensure(s == c, || format!("{l} stabilized on {side:?} gives {s}, not {c}"))?;
            }
        }
    }
    Ok(())
}

fn gauss_simplify(_: &MatrixCache, _: Faults) -> Result<(), String> {
    let trefoil = GaussCode::parse("O1+ U2+ O3+ U1+ O2+ U3+").map_err(|e| e.to_string())?;
    let padded = GaussCode::parse("O1+ O4+ O5- U2+ O3+ U1+ O2+ U4+ U5- U3+").map_err(|e| e.to_string())?;
    ensure(simplify(&padded) == simplify(&trefoil), || format!("{} simplifies to {}", padded, simplify(&padded)))?;
    ensure(simplify(&trefoil).crossings() == 3, || "the trefoil lost crossings".into())
}

fn goussarov_inverse(_: &MatrixCache, _: Faults) -> Result<(), String> {
    for w in ["", "a", "ab", "aba", "abca", "bbab"] {
        let d = WordDiagram::new(w);
        let back = goussarov_s_minus_sum(&WordKind, &goussarov_s(&WordKind, &d, 4)).map_err(|e| e.to_string())?;
        ensure(back == FormalSum::single(w.into()), || format!("s_-(s({w:?})) = {back}"))?;
    }
    Ok(())
}

fn monoid_oracle(_: &MatrixCache, _: Faults) -> Result<(), String> {
    for (name, m) in [("Z/2", MonoidTable::cyclic(2)), ("Z/3", MonoidTable::cyclic(3))] {
        let m = m.with_all_generators();
        for n in 1..=2 {
            let p = monoid_complex_presentation(&m, n).and_then(|p| presentation_invariants(&p));
            let o = monoid_ring_oracle(&m, n);
            let (p, o) = (p.map_err(|e| e.to_string())?, o.map_err(|e| e.to_string())?);
            ensure(p == o, || format!("{name}, n={n}: presentation {p}, oracle {o}"))?;
        }
    }
    Ok(())
}

fn comb_reduction(_: &MatrixCache, _: Faults) -> Result<(), String> {
    let w = CombWord::parse("⊂_2 x_1^{-1} x_2^{-1} |_3 x_2 |_1 ⊃_2").map_err(|e| e.to_string())?;
    let SearchOutcome::Found(path) = comb_reduce_search(&w, DEFAULT_DEPTH) else {
        return Err("no reduction found".into());
    };
    let t = TwistedLoom::parse("⊂_2 0_{2,2}^1 x_1^{-1} x_2^{-1} |_3 +_{2,1}^2 x_2 |_1 ⊃_2").map_err(|e| e.to_string())?;
    let r = localize_and_reduce(&t, &path).map_err(|e| e.to_string())?;
    ensure(r.comb().is_trivial(), || format!("ended at {r}"))
}
