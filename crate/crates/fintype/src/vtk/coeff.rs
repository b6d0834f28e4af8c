use num_bigint::BigInt;

/// The `b`-th Catalan number.
pub fn catalan(b: u32) -> BigInt {
    let mut c = BigInt::from(1);
    for i in 0..b {
        c = c * (2 * (2 * i + 1)) / (i + 2);
    }
    c
}

/// Table of the insertion weights `f(a, b)`:
/// `f(0, b) = C_b`, `f(a, 0) = 1`, `f(1, b) = 0` for `b > 0`, and
/// `f(a, b) = f(a-1, b) - f(a-2, b-1)` otherwise.
#[derive(Clone, Debug)]
pub struct FTable {
    rows: Vec<Vec<BigInt>>,
}

impl FTable {
    pub fn new(max_a: u32, max_b: u32) -> FTable {
        let (na, nb) = (max_a as usize + 1, max_b as usize + 1);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(na);
        for a in 0..na {
            let row = (0..nb)
                .map(|b| match (a, b) {
                    (0, b) => catalan(b as u32),
                    (_, 0) => BigInt::from(1),
                    (1, _) => BigInt::from(0),
                    (a, b) => &rows[a - 1][b] - &rows[a - 2][b - 1],
                })
                .collect();
            rows.push(row);
        }
        FTable { rows }
    }

    pub fn get(&self, a: u32, b: u32) -> &BigInt {
        &self.rows[a as usize][b as usize]
    }
}

pub fn coeff_f(a: u32, b: u32) -> BigInt {
    FTable::new(a, b).get(a, b).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalan_values() {
        let v: Vec<BigInt> = (0..8).map(catalan).collect();
        assert_eq!(v, [1, 1, 2, 5, 14, 42, 132, 429].map(BigInt::from));
    }

    #[test]
    fn f_values() {
        assert_eq!(coeff_f(0, 2), BigInt::from(2));
        assert_eq!(coeff_f(1, 3), BigInt::from(0));
        assert_eq!(coeff_f(2, 1), BigInt::from(-1));
        assert_eq!(coeff_f(2, 2), BigInt::from(-1));
        assert_eq!(coeff_f(3, 1), BigInt::from(-2));
        assert_eq!(coeff_f(7, 0), BigInt::from(1));
    }
}
