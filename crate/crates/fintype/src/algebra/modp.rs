use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::{ColumnIndex, FormalSum, SparseIntMatrix};
use crate::{Error, Result};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<u64> {
    if p > u32::MAX as u64 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(p)
}

pub(crate) fn reduce_bigint(v: &BigInt, p: u64) -> u64 {
    let r = v % BigInt::from(p);
    let r = r.to_i64().expect("residue fits in i64");
    if r < 0 {
        (r + p as i64) as u64
    } else {
        r as u64
    }
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Row echelon data in permuted column order.
struct Echelon {
    /// `order[pos]` is the original column at elimination position `pos`.
    order: Vec<usize>,
    /// Pivot row for each position, normalized to a leading 1, entries
    /// keyed by position.
    pivots: Vec<Option<Vec<(usize, u64)>>>,
}

/// Sparse elimination over F_p. Columns are visited in order of increasing
/// entry count and rows in order of increasing length (a static Markowitz
/// ordering); ties fall back to the lowest index, so the result is
/// deterministic.
fn echelon(m: &SparseIntMatrix, p: u64) -> Echelon {
    let ncols = m.ncols();
    let mut counts = vec![0usize; ncols];
    for (_, c, _) in m.entries() {
        counts[*c] += 1;
    }
    let mut order: Vec<usize> = (0..ncols).collect();
    order.sort_by_key(|&c| (counts[c], c));
    let mut pos = vec![0usize; ncols];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }

    let rows = m.rows();
    let mut row_order: Vec<usize> = (0..rows.len()).collect();
    row_order.sort_by_key(|&r| (rows[r].len(), r));

    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut acc = vec![0u64; ncols];
    for r in row_order {
        let mut lo = usize::MAX;
        for (c, v) in &rows[r] {
            let x = reduce_bigint(v, p);
            if x != 0 {
                acc[pos[*c]] = x;
                lo = lo.min(pos[*c]);
            }
        }
        if lo == usize::MAX {
            continue;
        }
        let mut j = lo;
        while j < ncols {
            let f = acc[j];
            if f != 0 {
                match &pivots[j] {
                    Some(prow) => {
                        for &(q, v) in prow {
                            acc[q] = (acc[q] + p - f * v % p) % p;
                        }
                    }
                    None => break,
                }
            }
            j += 1;
        }
        if j < ncols {
            let inv = inverse(acc[j], p);
            let mut prow = Vec::new();
            for (q, slot) in acc.iter_mut().enumerate().skip(j) {
                if *slot != 0 {
                    prow.push((q, *slot * inv % p));
                    *slot = 0;
                }
            }
            pivots[j] = Some(prow);
        }
    }
    Echelon { order, pivots }
}

/// Rank of `m` over the field with `p` elements.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> Result<usize> {
    let p = check_prime(p)?;
    Ok(echelon(m, p).pivots.iter().filter(|r| r.is_some()).count())
}

/// Reduced row echelon basis of a row space over F_p. Each basis row has a 1
/// in its pivot column and 0 in every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBasis {
    p: u64,
    ncols: usize,
    pivot_cols: Vec<usize>,
    rows: Vec<Vec<(usize, u64)>>,
}

impl RowBasis {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns (original indices), one per basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Basis rows as (original column, value) lists, parallel to `pivots`.
    pub fn rows(&self) -> &[Vec<(usize, u64)>] {
        &self.rows
    }

    /// Replaces a dense vector by the reduced representative of its coset.
    pub fn reduce_dense(&self, v: &mut [u64]) {
        assert_eq!(v.len(), self.ncols, "vector length must match the column count");
        let p = self.p;
        for (&c, row) in self.pivot_cols.iter().zip(&self.rows) {
            let f = v[c];
            if f == 0 {
                continue;
            }
            for &(q, x) in row {
                v[q] = (v[q] + p - f * x % p) % p;
            }
        }
    }
}

/// Deterministic reduced echelon basis of the row space of `m` over F_p.
pub fn row_reduce_mod_p(m: &SparseIntMatrix, p: u64) -> Result<RowBasis> {
    let p = check_prime(p)?;
    let Echelon { order, mut pivots } = echelon(m, p);
    let ncols = m.ncols();
    let mut acc = vec![0u64; ncols];
    for j in (0..ncols).rev() {
        let Some(row) = pivots[j].take() else { continue };
        for &(q, v) in &row {
            acc[q] = v;
        }
        for q in j + 1..ncols {
            let f = acc[q];
            if f == 0 {
                continue;
            }
            if let Some(prow) = &pivots[q] {
                for &(t, v) in prow {
                    acc[t] = (acc[t] + p - f * v % p) % p;
                }
            }
        }
        let mut reduced = Vec::new();
        for (q, slot) in acc.iter_mut().enumerate().skip(j) {
            if *slot != 0 {
                reduced.push((q, *slot));
                *slot = 0;
            }
        }
        pivots[j] = Some(reduced);
    }
    let mut pivot_cols = Vec::new();
    let mut rows = Vec::new();
    for (j, row) in pivots.into_iter().enumerate() {
        if let Some(row) = row {
            pivot_cols.push(order[j]);
            let mut r: Vec<(usize, u64)> = row.into_iter().map(|(q, v)| (order[q], v)).collect();
            r.sort_unstable();
            rows.push(r);
        }
    }
    Ok(RowBasis { p, ncols, pivot_cols, rows })
}

/// Dense reduced representative of `v` modulo the row space of `basis`.
/// Two sums are equal in the quotient exactly when their outputs agree.
pub fn coset_vector(v: &FormalSum, basis: &RowBasis, columns: &ColumnIndex) -> Result<Vec<u64>> {
    if columns.len() != basis.ncols {
        return Err(Error::DimensionMismatch(format!(
            "{} columns against a basis over {}",
            columns.len(),
            basis.ncols
        )));
    }
    let mut dense = vec![0u64; basis.ncols];
    for (k, c) in v.iter() {
        let i = columns.require(k)?;
        dense[i] = (dense[i] + reduce_bigint(c, basis.p)) % basis.p;
    }
    basis.reduce_dense(&mut dense);
    Ok(dense)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(nrows: usize, ncols: usize, e: &[(usize, usize, i64)]) -> SparseIntMatrix {
        SparseIntMatrix::new(nrows, ncols, e.iter().map(|&(r, c, v)| (r, c, BigInt::from(v)))).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let id = mat(3, 3, &[(0, 0, 1), (1, 1, 1), (2, 2, 1)]);
        assert_eq!(rank_mod_p(&id, 5).unwrap(), 3);
        assert_eq!(rank_mod_p(&SparseIntMatrix::zeros(2, 2), 2).unwrap(), 0);
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(rank_mod_p(&SparseIntMatrix::zeros(1, 1), 4), Err(Error::NotPrime(4)));
        assert!(row_reduce_mod_p(&SparseIntMatrix::zeros(1, 1), 1).is_err());
    }

    #[test]
    fn two_by_two_mod_two() {
        let m = mat(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 1), (1, 1, 2)]);
        assert_eq!(rank_mod_p(&m, 2).unwrap(), 1);
        assert_eq!(rank_mod_p(&m, 3).unwrap(), 1);
    }

    #[test]
    fn reduced_basis_has_unit_pivots() {
        let m = mat(3, 4, &[(0, 0, 1), (0, 1, 2), (1, 1, 1), (1, 3, 1), (2, 0, 1), (2, 3, 4)]);
        let b = row_reduce_mod_p(&m, 7).unwrap();
        for (i, row) in b.rows().iter().enumerate() {
            for (j, &c) in b.pivots().iter().enumerate() {
                let x = row.iter().find(|e| e.0 == c).map_or(0, |e| e.1);
                assert_eq!(x, u64::from(i == j));
            }
        }
    }
}
