use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::chord::{ChordDiagram, Endpoint, NumberedChordDiagram};
use super::coeff::FTable;
use crate::algebra::FormalSum;

/// The unitary diagram of `cd`: every section number 1. The empty diagram
/// gets its single section number 1 (braid index 1).
pub fn u_embed(cd: &ChordDiagram) -> NumberedChordDiagram {
    let sections = if cd.chords() == 0 { 1 } else { cd.boundary().len() };
    NumberedChordDiagram::canonical_unchecked(cd.boundary(), &vec![1; sections])
}

/// `v(X)`: insert `b_i` isolated chords into section `i` with weight
/// `∏ f(a_i, b_i)`, dropping diagrams with more than `n` chords. An isolated
/// chord is a tail immediately followed by its head.
///
/// The empty diagram with number `m` expands as the empty chord diagram
/// minus `v` of the one-chord diagrams with numbers `(1, j)`, `0 < j < m`.
/// This is what the stabilization relation forces, and it gives `v(∅, 1) = ∅`.
pub fn v_expand(x: &NumberedChordDiagram, n: usize) -> FormalSum {
    let mut acc = HashMap::new();
    v_expand_into(x, n, &BigInt::from(1), &mut acc);
    collect(acc)
}

pub(crate) fn collect(acc: HashMap<ChordDiagram, BigInt>) -> FormalSum {
    acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(d, c)| (d.key(), c)).collect()
}

pub(crate) fn v_expand_into(
    x: &NumberedChordDiagram,
    n: usize,
    coeff: &BigInt,
    acc: &mut HashMap<ChordDiagram, BigInt>,
) {
    let k = x.chords();
    if k > n {
        return;
    }
    if k == 0 {
        *acc.entry(ChordDiagram::empty()).or_default() += coeff;
        let chord = [Endpoint::tail(0), Endpoint::head(0)];
        let neg = -coeff;
        for j in 1..x.numbers()[0] {
            let y = NumberedChordDiagram::canonical_unchecked(&chord, &[1, j]);
            v_expand_into(&y, n, &neg, acc);
        }
        return;
    }
    let budget = (n - k) as u32;
    let max_a = x.numbers().iter().copied().max().unwrap_or(0);
    let table = FTable::new(max_a, budget);
    let mut counts = vec![0u32; x.boundary().len()];
    expand_rec(x, &table, 0, budget, coeff.clone(), &mut counts, acc);
}

fn expand_rec(
    x: &NumberedChordDiagram,
    table: &FTable,
    i: usize,
    budget: u32,
    weight: BigInt,
    counts: &mut Vec<u32>,
    acc: &mut HashMap<ChordDiagram, BigInt>,
) {
    if i == counts.len() {
        let mut next = x.chords() as u8;
        let mut word = Vec::with_capacity(x.boundary().len() + 2 * counts.iter().sum::<u32>() as usize);
        for (e, &b) in x.boundary().iter().zip(counts.iter()) {
            word.push(*e);
            for _ in 0..b {
                word.push(Endpoint::tail(next));
                word.push(Endpoint::head(next));
                next += 1;
            }
        }
        *acc.entry(ChordDiagram::canonical_unchecked(&word)).or_default() += weight;
        return;
    }
    let a = x.numbers()[i];
    for b in 0..=budget {
        let f = table.get(a, b);
        if f.is_zero() {
            continue;
        }
        counts[i] = b;
        expand_rec(x, table, i + 1, budget - b, &weight * f, counts, acc);
    }
    counts[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vtk::enumerate_cds;

    #[test]
    fn v_undoes_u() {
        for cd in enumerate_cds(3) {
            assert_eq!(v_expand(&u_embed(&cd), 3), FormalSum::single(cd.key()));
        }
    }

    #[test]
    fn one_chord_with_a_zero_section() {
        let chord = [Endpoint::tail(0), Endpoint::head(0)];
        let x = NumberedChordDiagram::new(&chord, &[0, 1]).unwrap();
        let one = ChordDiagram::new(&chord).unwrap();
        let mut two = FormalSum::single(one.key());
        // The inserted chord lands in the section of number 0.
        let iso = ChordDiagram::new(&[Endpoint::tail(0), Endpoint::tail(1), Endpoint::head(1), Endpoint::head(0)]).unwrap();
        two.add_term(iso.key(), 1);
        assert_eq!(v_expand(&x, 2), two);
        assert_eq!(v_expand(&x, 1), FormalSum::single(one.key()));
    }

    #[test]
    fn empty_diagram_convention() {
        let e = NumberedChordDiagram::new(&[], &[1]).unwrap();
        assert_eq!(v_expand(&e, 2), FormalSum::single(ChordDiagram::empty().key()));
        let e2 = NumberedChordDiagram::new(&[], &[2]).unwrap();
        let one = ChordDiagram::new(&[Endpoint::tail(0), Endpoint::head(0)]).unwrap();
        let mut want = FormalSum::single(ChordDiagram::empty().key());
        want.add_term(one.key(), -1);
        assert_eq!(v_expand(&e2, 1), want);
    }
}
