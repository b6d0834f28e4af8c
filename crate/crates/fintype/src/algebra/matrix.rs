use std::collections::HashMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{FormalSum, Key};
use crate::{Error, Result};

/// Fixed ordering of generator keys; column `i` of a relation matrix is
/// `keys()[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ColumnIndex {
    keys: Vec<Key>,
    index: HashMap<Key, usize>,
}

impl ColumnIndex {
    pub fn new(keys: impl IntoIterator<Item = Key>) -> Result<ColumnIndex> {
        let mut out = ColumnIndex::default();
        for k in keys {
            if out.index.contains_key(&k) {
                return Err(Error::invalid("column index", format!("duplicate key {k}")));
            }
            out.index.insert(k.clone(), out.keys.len());
            out.keys.push(k);
        }
        Ok(out)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[Key] {
        &self.keys
    }

    pub fn get(&self, key: &Key) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub(crate) fn require(&self, key: &Key) -> Result<usize> {
        self.get(key).ok_or_else(|| Error::UnknownKey(key.to_string()))
    }
}

/// Relations-by-generators integer matrix in coordinate form, kept sorted by
/// (row, column) with no zero entries.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseIntMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn new(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigInt)>,
    ) -> Result<SparseIntMatrix> {
        let mut entries: Vec<_> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        for w in entries.windows(2) {
            if (w[0].0, w[0].1) == (w[1].0, w[1].1) {
                return Err(Error::invalid(
                    "matrix",
                    format!("two entries at ({}, {})", w[0].0, w[0].1),
                ));
            }
        }
        if let Some(e) = entries.iter().find(|e| e.0 >= nrows || e.1 >= ncols) {
            return Err(Error::invalid(
                "matrix",
                format!("entry ({}, {}) outside {nrows}x{ncols}", e.0, e.1),
            ));
        }
        Ok(SparseIntMatrix { nrows, ncols, entries })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> SparseIntMatrix {
        SparseIntMatrix { nrows, ncols, entries: Vec::new() }
    }

    /// One row per formal sum; every key must be a column.
    pub fn from_rows(rows: &[FormalSum], columns: &ColumnIndex) -> Result<SparseIntMatrix> {
        let mut entries = Vec::new();
        for (r, row) in rows.iter().enumerate() {
            for (k, c) in row.iter() {
                entries.push((r, columns.require(k)?, c.clone()));
            }
        }
        SparseIntMatrix::new(rows.len(), columns.len(), entries)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, BigInt)] {
        &self.entries
    }

    /// Entries grouped by row, as (column, value) lists. Empty rows included.
    pub fn rows(&self) -> Vec<Vec<(usize, &BigInt)>> {
        let mut out = vec![Vec::new(); self.nrows];
        for (r, c, v) in &self.entries {
            out[*r].push((*c, v));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (r, c, v) in &self.entries {
            out[*r][*c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut entries: Vec<_> = self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect();
        entries.sort_by_key(|e| (e.0, e.1));
        SparseIntMatrix { nrows: self.ncols, ncols: self.nrows, entries }
    }

    /// Triplet text: `nrows ncols nnz`, then `row col value` per entry.
    pub fn to_triplet(&self) -> String {
        let mut s = format!("{} {} {}\n", self.nrows, self.ncols, self.entries.len());
        for (r, c, v) in &self.entries {
            let _ = writeln!(s, "{r} {c} {v}");
        }
        s
    }

    pub fn from_triplet(text: &str) -> Result<SparseIntMatrix> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty triplet file".into()))?;
        let h: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad header {header:?}"))))
            .collect::<Result<_>>()?;
        let [nrows, ncols, nnz] = h[..] else {
            return Err(Error::Parse(format!("bad header {header:?}")));
        };
        let mut entries = Vec::with_capacity(nnz);
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("bad triplet line {line:?}"));
            if parts.len() != 3 {
                return Err(bad());
            }
            let r = parts[0].parse().map_err(|_| bad())?;
            let c = parts[1].parse().map_err(|_| bad())?;
            let v: BigInt = parts[2].parse().map_err(|_| bad())?;
            if v.is_zero() {
                return Err(bad());
            }
            entries.push((r, c, v));
        }
        if entries.len() != nnz {
            return Err(Error::Parse(format!("header promises {nnz} entries, found {}", entries.len())));
        }
        SparseIntMatrix::new(nrows, ncols, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triplet_round_trip() {
        let m = SparseIntMatrix::new(
            2,
            3,
            vec![(1, 2, BigInt::from(-7)), (0, 0, BigInt::from(2)), (0, 1, BigInt::from(0))],
        )
        .unwrap();
        assert_eq!(m.nnz(), 2);
        let text = m.to_triplet();
        assert_eq!(text, "2 3 2\n0 0 2\n1 2 -7\n");
        assert_eq!(SparseIntMatrix::from_triplet(&text).unwrap(), m);
    }

    #[test]
    fn rejects_out_of_bounds_and_duplicates() {
        assert!(SparseIntMatrix::new(1, 1, vec![(0, 1, BigInt::from(1))]).is_err());
        assert!(SparseIntMatrix::new(1, 1, vec![(0, 0, BigInt::from(1)), (0, 0, BigInt::from(2))]).is_err());
        assert!(SparseIntMatrix::from_triplet("1 1 2\n0 0 1\n").is_err());
    }

    #[test]
    fn from_rows_names_unknown_key() {
        let cols = ColumnIndex::new([Key::from("a")]).unwrap();
        let err = SparseIntMatrix::from_rows(&[FormalSum::single(Key::from("zz"))], &cols).unwrap_err();
        assert!(err.to_string().contains("zz"));
    }
}
