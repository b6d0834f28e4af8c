//! Diagram categories, reduced to what the Goussarov maps need: an order,
//! stable part indices `0..order`, a subdiagram operation and canonical keys.
//!
//! `s` sends a diagram to the sum of its subdiagrams with at most `n` parts;
//! `s_-` is its signed inverse. Together they identify the rank-`n` finite
//! type group with the free abelian group on diagrams of order at most `n`.

use crate::algebra::{FormalSum, Key};
use crate::{Error, Result};

/// A concrete diagram category. Parts of `d` are indexed `0..order(d)`;
/// `subdiagram` keeps the listed parts (given in increasing order) and
/// renumbers them in that order.
pub trait DiagramKind {
    type Diagram: Clone;

    fn order(&self, d: &Self::Diagram) -> usize;
    fn subdiagram(&self, d: &Self::Diagram, keep: &[usize]) -> Self::Diagram;
    fn canonical(&self, d: &Self::Diagram) -> Key;
    /// Inverse of `canonical` up to isomorphism; needed to extend the maps
    /// linearly over formal sums.
    #[allow(clippy::wrong_self_convention)]
    fn from_canonical(&self, key: &Key) -> Result<Self::Diagram>;
}

/// Calls `f` on every subset of `0..k` with at most `max` elements, as an
/// increasing list. Smaller subsets come first.
pub fn for_each_subset(k: usize, max: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if left == 0 {
            f(cur);
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i + 1, k, left - 1, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::new();
    for size in 0..=max.min(k) {
        rec(0, k, size, &mut cur, &mut f);
    }
}

fn sign(exp: usize) -> i64 {
    if exp % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sum of all subdiagrams with at most `n` parts, with multiplicity.
pub fn goussarov_s<K: DiagramKind>(kind: &K, d: &K::Diagram, n: usize) -> FormalSum {
    let mut out = FormalSum::new();
    for_each_subset(kind.order(d), n, |s| out.add_term(kind.canonical(&kind.subdiagram(d, s)), 1));
    out
}

/// `Σ_S (-1)^{|F∖S|} d_S` over all subsets of parts.
pub fn goussarov_s_minus<K: DiagramKind>(kind: &K, d: &K::Diagram) -> FormalSum {
    let k = kind.order(d);
    let mut out = FormalSum::new();
    for_each_subset(k, k, |s| out.add_term(kind.canonical(&kind.subdiagram(d, s)), sign(k - s.len())));
    out
}

/// `R_{(Q,a)} = Σ_{Q ⊆ H} (-1)^{|H|} a_H`; `q` must leave exactly `n + 1`
/// parts out.
pub fn relation_sum<K: DiagramKind>(kind: &K, a: &K::Diagram, q: &[usize], n: usize) -> Result<FormalSum> {
    let k = kind.order(a);
    let mut q = q.to_vec();
    q.sort_unstable();
    q.dedup();
    if q.iter().any(|&i| i >= k) {
        return Err(Error::invalid("relation sum", "Q is not a set of parts"));
    }
    if k - q.len() != n + 1 {
        return Err(Error::invalid(
            "relation sum",
            format!("complement of Q has {} parts, expected {}", k - q.len(), n + 1),
        ));
    }
    let rest: Vec<usize> = (0..k).filter(|i| !q.contains(i)).collect();
    let mut out = FormalSum::new();
    for_each_subset(rest.len(), rest.len(), |extra| {
        let mut h: Vec<usize> = q.iter().copied().chain(extra.iter().map(|&i| rest[i])).collect();
        h.sort_unstable();
        out.add_term(kind.canonical(&kind.subdiagram(a, &h)), sign(h.len()));
    });
    Ok(out)
}

/// `s` extended linearly.
pub fn goussarov_s_sum<K: DiagramKind>(kind: &K, x: &FormalSum, n: usize) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (k, c) in x.iter() {
        out.add_scaled(&goussarov_s(kind, &kind.from_canonical(k)?, n), c);
    }
    Ok(out)
}

/// `s_-` extended linearly.
pub fn goussarov_s_minus_sum<K: DiagramKind>(kind: &K, x: &FormalSum) -> Result<FormalSum> {
    let mut out = FormalSum::new();
    for (k, c) in x.iter() {
        out.add_scaled(&goussarov_s_minus(kind, &kind.from_canonical(k)?), c);
    }
    Ok(out)
}

/// A combination of diagrams of order at most `n` equal to `d` in the
/// rank-`n` group, computed as `s_-(s(d))`.
pub fn reduce_low_order<K: DiagramKind>(kind: &K, d: &K::Diagram, n: usize) -> Result<FormalSum> {
    if kind.order(d) <= n {
        return Ok(FormalSum::single(kind.canonical(d)));
    }
    goussarov_s_minus_sum(kind, &goussarov_s(kind, d, n))
}

/// Words over an alphabet; parts are letter positions and subdiagrams are
/// subsequences.
#[derive(Clone, Copy, Debug, Default)]
pub struct WordKind;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordDiagram(pub String);

impl WordDiagram {
    pub fn new(s: &str) -> WordDiagram {
        WordDiagram(s.to_string())
    }
}

impl DiagramKind for WordKind {
    type Diagram = WordDiagram;

    fn order(&self, d: &WordDiagram) -> usize {
        d.0.chars().count()
    }

    fn subdiagram(&self, d: &WordDiagram, keep: &[usize]) -> WordDiagram {
        let chars: Vec<char> = d.0.chars().collect();
        WordDiagram(keep.iter().map(|&i| chars[i]).collect())
    }

    fn canonical(&self, d: &WordDiagram) -> Key {
        Key::from(d.0.as_str())
    }

    fn from_canonical(&self, key: &Key) -> Result<WordDiagram> {
        std::str::from_utf8(key.as_bytes())
            .map(WordDiagram::new)
            .map_err(|_| Error::Parse(format!("word key {key} is not UTF-8")))
    }
}
