use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::SparseIntMatrix;
use crate::{Error, Result};

pub const DEFAULT_SNF_LIMIT: usize = 2000;

/// Isomorphism type of a finitely generated abelian group:
/// `Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `d_1 | d_2 | ... | d_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Builds the invariants from arbitrary cyclic orders (`0` meaning `Z`,
    /// `±1` meaning trivial), restoring the divisibility chain.
    pub fn from_cyclic_orders(orders: impl IntoIterator<Item = BigInt>) -> AbelianInvariants {
        let mut free_rank = 0;
        let mut d: Vec<BigInt> = Vec::new();
        for o in orders {
            let o = o.abs();
            if o.is_zero() {
                free_rank += 1;
            } else if !o.is_one() {
                d.push(o);
            }
        }
        // Repeated (gcd, lcm) replacement converges to the invariant factors.
        for i in 0..d.len() {
            for j in i + 1..d.len() {
                let g = d[i].gcd(&d[j]);
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
        d.retain(|x| !x.is_one());
        AbelianInvariants { torsion: d, free_rank }
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> Result<AbelianInvariants> {
    smith_normal_form_with_limit(m, DEFAULT_SNF_LIMIT)
}

/// Invariants of the cokernel of `m`, read as relation rows on `ncols`
/// generators.
pub fn smith_normal_form_with_limit(m: &SparseIntMatrix, limit: usize) -> Result<AbelianInvariants> {
    if m.nrows() > limit || m.ncols() > limit {
        return Err(Error::SizeLimit { rows: m.nrows(), cols: m.ncols(), limit });
    }
    let diag = diagonalize(m.to_dense(), m.ncols());
    let nonzero = diag.len();
    let mut inv = AbelianInvariants::from_cyclic_orders(diag);
    inv.free_rank = m.ncols() - nonzero;
    Ok(inv)
}

/// Returns the nonzero diagonal entries after integer row and column
/// operations.
fn diagonalize(mut a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<BigInt> {
    let nrows = a.len();
    let mut diag = Vec::new();
    for t in 0..nrows.min(ncols) {
        let Some((pr, pc)) = min_entry(&a, t, t..nrows, t..ncols) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&pivot);
                let (top, rest) = a.split_at_mut(i);
                for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * y;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&pivot);
                for row in a.iter_mut().skip(t) {
                    let sub = &q * &row[t];
                    row[j] -= sub;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // A remainder is smaller than the pivot; move it into place.
            let (r, c) = min_entry_cross(&a, t, nrows, ncols);
            a.swap(t, r);
            for row in a.iter_mut() {
                row.swap(t, c);
            }
        }
        diag.push(a[t][t].clone());
    }
    diag
}

fn min_entry(
    a: &[Vec<BigInt>],
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if a[i][j].is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest nonzero entry in row `t` or column `t` (from `t` on).
fn min_entry_cross(a: &[Vec<BigInt>], t: usize, nrows: usize, ncols: usize) -> (usize, usize) {
    let mut best = (t, t);
    for (i, row) in a.iter().enumerate().take(nrows).skip(t) {
        if !row[t].is_zero() && row[t].abs() < a[best.0][best.1].abs() {
            best = (i, t);
        }
    }
    for j in t..ncols {
        if !a[t][j].is_zero() && a[t][j].abs() < a[best.0][best.1].abs() {
            best = (t, j);
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(nrows: usize, ncols: usize, e: &[(usize, usize, i64)]) -> SparseIntMatrix {
        SparseIntMatrix::new(nrows, ncols, e.iter().map(|&(r, c, v)| (r, c, BigInt::from(v)))).unwrap()
    }

    fn inv(torsion: &[i64], free_rank: usize) -> AbelianInvariants {
        AbelianInvariants { torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(), free_rank }
    }

    #[test]
    fn small_cases() {
        assert_eq!(smith_normal_form(&mat(2, 2, &[(0, 0, 2), (1, 1, 3)])).unwrap(), inv(&[6], 0));
        assert_eq!(smith_normal_form(&SparseIntMatrix::zeros(0, 3)).unwrap(), inv(&[], 3));
        assert_eq!(smith_normal_form(&mat(2, 2, &[(0, 0, 1), (1, 1, 1)])).unwrap(), inv(&[], 0));
    }

    #[test]
    fn needs_remainder_steps() {
        // Rows (4, 6) and (6, 4): determinant -20, gcd of entries 2.
        let m = mat(2, 2, &[(0, 0, 4), (0, 1, 6), (1, 0, 6), (1, 1, 4)]);
        assert_eq!(smith_normal_form(&m).unwrap(), inv(&[2, 10], 0));
    }

    #[test]
    fn size_limit() {
        let m = SparseIntMatrix::zeros(3, 3);
        assert!(smith_normal_form_with_limit(&m, 2).unwrap_err().is_resource());
    }

    #[test]
    fn chain_normalization() {
        let i = AbelianInvariants::from_cyclic_orders([4, 6, 0, 1, -3].map(BigInt::from));
        assert_eq!(i, inv(&[6, 12], 1));
        assert_eq!(i.to_string(), "Z + Z/6 + Z/12");
    }
}
