use fintype::algebra::{rank_mod_p, smith_normal_form, AbelianInvariants, SparseIntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn sparse(rows: &[Vec<i64>]) -> SparseIntMatrix {
    let ncols = rows.first().map_or(0, |r| r.len());
    let entries = rows
        .iter()
        .enumerate()
        .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v))));
    SparseIntMatrix::new(rows.len(), ncols, entries).unwrap()
}

/// Textbook Gaussian elimination over F_p on a dense copy.
fn dense_rank(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = (1..p).find(|x| x * m[rank][c] % p == 1).unwrap();
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    if m.is_empty() {
        return BigInt::from(1);
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<BigInt>> =
                m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
            let s = if j % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
            s * &m[0][j] * det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    (k - 1..n).flat_map(|last| subsets(last, k - 1).into_iter().map(move |mut s| {
        s.push(last);
        s
    })).collect()
}

/// Invariants of Z^cols / rowspace from determinantal divisors.
fn snf_by_minors(rows: &[Vec<i64>]) -> AbelianInvariants {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut prev = BigInt::from(1);
    let mut orders = Vec::new();
    for k in 1..=rows.len().min(ncols) {
        let mut g = BigInt::zero();
        for rs in subsets(rows.len(), k) {
            for cs in subsets(ncols, k) {
                let m: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(rows[r][c])).collect()).collect();
                g = g.gcd(&det(&m));
            }
        }
        if g.is_zero() {
            break;
        }
        orders.push(&g / &prev);
        prev = g;
    }
    let rank = orders.len();
    orders.extend((rank..ncols).map(|_| BigInt::zero()));
    AbelianInvariants::from_cyclic_orders(orders)
}

fn matrix(max_r: usize, max_c: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_r, 1..=max_c).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-4i64..=4, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_matches_dense_elimination(rows in matrix(7, 7), p in prop::sample::select(vec![2u64, 3, 5, 7, 65521])) {
        prop_assert_eq!(rank_mod_p(&sparse(&rows), p).unwrap(), dense_rank(&rows, p as i64));
    }

    #[test]
    fn snf_matches_determinantal_divisors(rows in matrix(4, 4)) {
        prop_assert_eq!(smith_normal_form(&sparse(&rows)).unwrap(), snf_by_minors(&rows));
    }

    #[test]
    fn snf_is_invariant_under_unimodular_ops(rows in matrix(5, 5), ops in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3, any::<bool>()), 0..12)) {
        let before = smith_normal_form(&sparse(&rows)).unwrap();
        let mut m = rows.clone();
        let (nr, nc) = (m.len(), m[0].len());
        for (a, b, k, on_rows) in ops {
            if on_rows {
                let (a, b) = (a % nr, b % nr);
                if a != b {
                    let src = m[b].clone();
                    for (x, y) in m[a].iter_mut().zip(&src) { *x += k * y; }
                } else {
                    for x in m[a].iter_mut() { *x = -*x; }
                }
            } else {
                let (a, b) = (a % nc, b % nc);
                if a != b {
                    for r in m.iter_mut() { r[a] += k * r[b]; }
                } else {
                    for r in m.iter_mut() { r.swap(a, (a + 1) % nc); }
                }
            }
        }
        prop_assert_eq!(smith_normal_form(&sparse(&m)).unwrap(), before);
    }

    #[test]
    fn triplet_round_trip(rows in matrix(6, 6)) {
        let m = sparse(&rows);
        prop_assert_eq!(SparseIntMatrix::from_triplet(&m.to_triplet()).unwrap(), m);
    }
}

#[test]
fn known_groups() {
    // Z/2 + Z/6 + Z from diag(2, 6) with one free column
    let inv = smith_normal_form(&sparse(&[vec![2, 0, 0], vec![0, 6, 0]])).unwrap();
    assert_eq!(inv.to_string(), "Z + Z/2 + Z/6");
    assert_eq!(inv.torsion.iter().map(|d| d.abs()).collect::<Vec<_>>(), [BigInt::from(2), BigInt::from(6)]);
    let inv = smith_normal_form(&sparse(&[vec![4, 6]])).unwrap();
    assert_eq!(inv.to_string(), "Z + Z/2");
}
