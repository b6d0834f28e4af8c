use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::braid::{invariant_sum, VirtualBraidWord};
use super::chord::{enumerate_cds, ChordDiagram, Endpoint, NumberedChordDiagram};
use super::expand::{collect, v_expand_into};
use crate::algebra::{rank_mod_p, row_reduce_mod_p, ColumnIndex, FormalSum, RowBasis, SparseIntMatrix};
use crate::cubes::dedup_rows;
use crate::{Error, Result};

/// Largest rank accepted by the relation generators.
pub const MAX_RANK: usize = 6;

fn check_rank(n: usize) -> Result<()> {
    if n > MAX_RANK {
        return Err(Error::Cap { what: format!("rank {n}"), cap: MAX_RANK as u128 });
    }
    Ok(())
}

// Local chords of the braid-move pattern, named by the strands they join.
const AB: u8 = 200;
const AC: u8 = 201;
const BC: u8 = 202;

type Cluster = &'static [Endpoint];

/// The eight terms of the braid-move relation restricted to three local
/// arcs A, B, C met in that order along the strand direction. Each term is
/// a sign and the endpoints on each arc, in circle order.
const BRAID_MOVE: [(i64, [Cluster; 3]); 8] = {
    const fn t(c: u8) -> Endpoint {
        Endpoint::tail(c)
    }
    const fn h(c: u8) -> Endpoint {
        Endpoint::head(c)
    }
    [
        (1, [&[t(AB), t(AC)], &[h(AB), t(BC)], &[h(AC), h(BC)]]),
        (1, [&[t(AB), t(AC)], &[h(AB)], &[h(AC)]]),
        (1, [&[t(AC)], &[t(BC)], &[h(AC), h(BC)]]),
        (1, [&[t(AB)], &[h(AB), t(BC)], &[h(BC)]]),
        (-1, [&[t(AC), t(AB)], &[t(BC), h(AB)], &[h(BC), h(AC)]]),
        (-1, [&[t(AC)], &[t(BC)], &[h(BC), h(AC)]]),
        (-1, [&[t(AC), t(AB)], &[h(AB)], &[h(AC)]]),
        (-1, [&[t(AB)], &[t(BC), h(AB)], &[h(BC)]]),
    ]
};

/// Type 1 rows: the braid-move pattern placed at every triple of positions
/// of an ambient diagram with unit numbers. Inside a cluster the sections
/// are 0; every other section is 1. Each term goes through `v`.
pub fn generate_type1(n: usize) -> Result<Vec<FormalSum>> {
    check_rank(n)?;
    if n < 2 {
        return Ok(Vec::new());
    }
    let ambients: Vec<ChordDiagram> = enumerate_cds(n - 2);
    let rows: Vec<Vec<FormalSum>> = ambients.par_iter().map(|amb| type1_for_ambient(amb, n)).collect();
    Ok(dedup_rows(rows.into_iter().flatten()))
}

fn type1_for_ambient(amb: &ChordDiagram, n: usize) -> Vec<FormalSum> {
    let len = amb.boundary().len();
    let slots = len + 3;
    let mut rows = Vec::new();
    for pa in 0..slots {
        for pb in 0..slots {
            for pc in 0..slots {
                if pa == pb || pb == pc || pa == pc {
                    continue;
                }
                let mut acc = HashMap::new();
                for (sign, clusters) in &BRAID_MOVE {
                    let mut word = Vec::new();
                    let mut numbers = Vec::new();
                    let mut ambient = amb.boundary().iter();
                    for s in 0..slots {
                        let cluster = [(pa, 0), (pb, 1), (pc, 2)].iter().find(|x| x.0 == s).map(|x| clusters[x.1]);
                        match cluster {
                            Some(c) => {
                                for (j, e) in c.iter().enumerate() {
                                    word.push(*e);
                                    numbers.push(u32::from(j + 1 == c.len()));
                                }
                            }
                            None => {
                                word.push(*ambient.next().expect("ambient endpoint"));
                                numbers.push(1);
                            }
                        }
                    }
                    if word.len() / 2 > n {
                        continue;
                    }
                    let x = NumberedChordDiagram::canonical_unchecked(&word, &numbers);
                    v_expand_into(&x, n, &BigInt::from(*sign), &mut acc);
                }
                let row = collect(acc);
                if !row.is_zero() {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Type 3 rows: for each chord, moving one root of unity past both of its
/// endpoints. The four sections touching the chord are 0 in the base
/// diagram and every other section is 1; the two sides add one unit before
/// or after each endpoint.
pub fn generate_type3(n: usize) -> Result<Vec<FormalSum>> {
    check_rank(n)?;
    let cds: Vec<ChordDiagram> = enumerate_cds(n).into_iter().filter(|d| d.chords() > 0).collect();
    let rows: Vec<Vec<FormalSum>> = cds
        .par_iter()
        .map(|cd| {
            let b = cd.boundary();
            let len = b.len();
            (0..cd.chords() as u8)
                .filter_map(|c| {
                    let pt = b.iter().position(|e| *e == Endpoint::tail(c)).expect("tail");
                    let ph = b.iter().position(|e| *e == Endpoint::head(c)).expect("head");
                    let (bt, at, bh, ah) = ((pt + len - 1) % len, pt, (ph + len - 1) % len, ph);
                    let mut base = vec![1u32; len];
                    for s in [bt, at, bh, ah] {
                        base[s] = 0;
                    }
                    let (mut y1, mut y2) = (base.clone(), base);
                    y1[bt] += 1;
                    y1[bh] += 1;
                    y2[at] += 1;
                    y2[ah] += 1;
                    let mut acc = HashMap::new();
                    v_expand_into(&NumberedChordDiagram::canonical_unchecked(b, &y1), n, &BigInt::from(1), &mut acc);
                    v_expand_into(&NumberedChordDiagram::canonical_unchecked(b, &y2), n, &BigInt::from(-1), &mut acc);
                    let row = collect(acc);
                    (!row.is_zero()).then_some(row)
                })
                .collect()
        })
        .collect();
    Ok(dedup_rows(rows.into_iter().flatten()))
}

/// The finite presentation of the rank-`n` group: chord diagrams with at
/// most `n` chords modulo the `v`-images of the restricted relations.
#[derive(Clone, Debug)]
pub struct VtkPresentation {
    pub n: usize,
    pub diagrams: Vec<ChordDiagram>,
    pub columns: ColumnIndex,
    pub matrix: SparseIntMatrix,
}

impl VtkPresentation {
    pub fn new(n: usize) -> Result<VtkPresentation> {
        let mut rows = generate_type1(n)?;
        rows.extend(generate_type3(n)?);
        let rows = dedup_rows(rows);
        let diagrams = enumerate_cds(n);
        let columns = ColumnIndex::new(diagrams.iter().map(|d| d.key()))?;
        let matrix = SparseIntMatrix::from_rows(&rows, &columns)?;
        Ok(VtkPresentation { n, diagrams, columns, matrix })
    }

    /// Rebuilds a presentation around a previously computed matrix, for
    /// instance one loaded from a cache.
    pub fn with_matrix(n: usize, matrix: SparseIntMatrix) -> Result<VtkPresentation> {
        let diagrams = enumerate_cds(n);
        if matrix.ncols() != diagrams.len() {
            return Err(Error::DimensionMismatch(format!(
                "matrix has {} columns, rank {n} has {} chord diagrams",
                matrix.ncols(),
                diagrams.len()
            )));
        }
        let columns = ColumnIndex::new(diagrams.iter().map(|d| d.key()))?;
        Ok(VtkPresentation { n, diagrams, columns, matrix })
    }

    pub fn dimension(&self, p: u64) -> Result<VtkDimension> {
        let rank = rank_mod_p(&self.matrix, p)?;
        let generators = self.diagrams.len() - 1;
        Ok(VtkDimension { n: self.n, p, generators, rank, dim: generators - rank })
    }

    pub fn quotient(&self, p: u64) -> Result<VtkQuotient> {
        Ok(VtkQuotient { n: self.n, columns: self.columns.clone(), basis: row_reduce_mod_p(&self.matrix, p)? })
    }
}

/// One row of the dimension table. `generators` counts the nonempty chord
/// diagrams; the empty diagram never occurs in a relation and spans the
/// constant invariants, so the full group has dimension `dim + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct VtkDimension {
    pub n: usize,
    pub p: u64,
    pub generators: usize,
    pub rank: usize,
    pub dim: usize,
}

impl VtkDimension {
    pub fn dim_with_constant(&self) -> usize {
        self.dim + 1
    }
}

pub fn vtk_dimension(n: usize, p: u64) -> Result<VtkDimension> {
    VtkPresentation::new(n)?.dimension(p)
}

/// Reduced row space of a presentation over F_p, for comparing invariants.
#[derive(Clone, Debug)]
pub struct VtkQuotient {
    pub n: usize,
    columns: ColumnIndex,
    basis: RowBasis,
}

impl VtkQuotient {
    pub fn prime(&self) -> u64 {
        self.basis.prime()
    }

    pub fn columns(&self) -> &ColumnIndex {
        &self.columns
    }

    pub fn basis(&self) -> &RowBasis {
        &self.basis
    }

    /// Reduced coset representative of a chord diagram combination.
    pub fn vector(&self, x: &FormalSum) -> Result<Vec<u64>> {
        crate::algebra::coset_vector(x, &self.basis, &self.columns)
    }

    pub fn contains(&self, x: &FormalSum) -> Result<bool> {
        Ok(self.vector(x)?.iter().all(|&c| c == 0))
    }

    /// Coset vector of the invariant of the closure of `w`.
    pub fn evaluate(&self, w: &VirtualBraidWord) -> Result<Vec<u64>> {
        self.vector(&invariant_sum(w, self.n)?)
    }
}

/// The rank-`n` invariant of the closure of `w` reduced mod `p`. Two words
/// get equal vectors exactly when their invariants agree over F_p. Builds
/// the presentation on every call; reuse a [`VtkQuotient`] for batches.
pub fn evaluate_invariant(w: &VirtualBraidWord, n: usize, p: u64) -> Result<Vec<u64>> {
    VtkPresentation::new(n)?.quotient(p)?.evaluate(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rows_have_zero_augmentation() {
        for r in generate_type1(3).unwrap().iter().chain(&generate_type3(3).unwrap()) {
            assert_eq!(r.augmentation(), BigInt::from(0), "{r}");
        }
    }

    #[test]
    fn minimal_braid_move_row() {
        let rows = generate_type1(3).unwrap();
        assert!(rows.iter().any(|r| r.len() == 8 || r.len() < 8));
        assert!(!rows.is_empty());
    }

    #[test]
    fn rank_two_table_entries() {
        let pres = VtkPresentation::new(2).unwrap();
        for p in [2, 3, 5, 7] {
            assert_eq!(pres.dimension(p).unwrap().dim, 3);
        }
    }
}
