use crate::{Error, Result};

/// An arrow `C_m -> C_n` of the cube category, stored as the pair `(f, s)`:
/// an injection `f: [m] -> [n]` and a fixed bit for every coordinate outside
/// the image of `f`. Coordinates are 1-based as in the combinatorial cubes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeMap {
    m: usize,
    n: usize,
    f: Vec<usize>,
    s: Vec<Option<bool>>,
}

impl CubeMap {
    /// `f[i-1]` is the image of coordinate `i`; `s` lists `(j, bit)` for
    /// exactly the coordinates `j` missing from the image.
    pub fn new(m: usize, n: usize, f: Vec<usize>, s: &[(usize, bool)]) -> Result<CubeMap> {
        if f.len() != m {
            return Err(Error::invalid("cube map", format!("f has {} values, expected {m}", f.len())));
        }
        let mut slots: Vec<Option<Option<bool>>> = vec![None; n];
        for &j in &f {
            if j == 0 || j > n {
                return Err(Error::invalid("cube map", format!("f value {j} outside [1, {n}]")));
            }
            if slots[j - 1].is_some() {
                return Err(Error::invalid("cube map", format!("f is not injective at {j}")));
            }
            slots[j - 1] = Some(None);
        }
        for &(j, bit) in s {
            if j == 0 || j > n || slots[j - 1].is_some() {
                return Err(Error::invalid("cube map", format!("s is defined at {j}")));
            }
            slots[j - 1] = Some(Some(bit));
        }
        let s = slots
            .into_iter()
            .enumerate()
            .map(|(j, v)| v.ok_or_else(|| Error::invalid("cube map", format!("s is undefined at {}", j + 1))))
            .collect::<Result<Vec<_>>>()?;
        Ok(CubeMap { m, n, f, s })
    }

    pub fn identity(n: usize) -> CubeMap {
        CubeMap { m: n, n, f: (1..=n).collect(), s: vec![None; n] }
    }

    /// The corner `C_0 -> C_n` at the given point.
    pub fn corner(bits: &[bool]) -> CubeMap {
        CubeMap { m: 0, n: bits.len(), f: Vec::new(), s: bits.iter().map(|&b| Some(b)).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.n
    }

    pub fn f(&self) -> &[usize] {
        &self.f
    }

    /// The fixed bit at coordinate `j`, or `None` if `j` is in the image.
    pub fn s(&self, j: usize) -> Option<bool> {
        self.s[j - 1]
    }

    /// Image of a point of `C_m`.
    pub fn apply(&self, b: &[bool]) -> Vec<bool> {
        assert_eq!(b.len(), self.m, "point has the wrong dimension");
        let mut out: Vec<bool> = self.s.iter().map(|x| x.unwrap_or(false)).collect();
        for (i, &j) in self.f.iter().enumerate() {
            out[j - 1] = b[i];
        }
        out
    }

    /// The composite `a ∘ b` for `b: C_k -> C_m`, `a: C_m -> C_n`.
    pub fn compose(a: &CubeMap, b: &CubeMap) -> Result<CubeMap> {
        if b.n != a.m {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose C_{} -> C_{} after C_{} -> C_{}",
                a.m, a.n, b.m, b.n
            )));
        }
        let f = b.f.iter().map(|&i| a.f[i - 1]).collect();
        let mut s = a.s.clone();
        for (i, &j) in a.f.iter().enumerate() {
            s[j - 1] = b.s[i];
        }
        Ok(CubeMap { m: b.m, n: a.n, f, s })
    }
}

/// All corners `C_0 -> C_{n+1}` with the sign `(-1)^(number of 1s)`, in
/// binary counting order with coordinate 1 most significant.
pub fn corner_signs(n: usize) -> Vec<(CubeMap, i8)> {
    let dim = n + 1;
    (0..1usize << dim)
        .map(|code| {
            let bits: Vec<bool> = (0..dim).map(|i| code >> (dim - 1 - i) & 1 == 1).collect();
            let sign = if bits.iter().filter(|&&b| b).count() % 2 == 0 { 1 } else { -1 };
            (CubeMap::corner(&bits), sign)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_face_example() {
        let b = CubeMap::new(2, 3, vec![1, 3], &[(2, true)]).unwrap();
        assert_eq!(b.apply(&[false, true]), vec![false, true, true]);
        assert_eq!(CubeMap::compose(&CubeMap::identity(3), &b).unwrap(), b);
        assert_eq!(CubeMap::compose(&b, &CubeMap::identity(2)).unwrap(), b);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(CubeMap::new(2, 3, vec![1, 1], &[(2, true), (3, false)]).is_err());
        assert!(CubeMap::new(1, 2, vec![1], &[]).is_err());
        assert!(CubeMap::new(1, 2, vec![1], &[(1, true), (2, true)]).is_err());
        let b = CubeMap::identity(2);
        assert!(CubeMap::compose(&CubeMap::identity(3), &b).is_err());
    }

    #[test]
    fn corner_sign_patterns() {
        let signs: Vec<i8> = corner_signs(1).into_iter().map(|c| c.1).collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
        let c0 = corner_signs(0);
        assert_eq!(c0[0].0.s(1), Some(false));
        assert_eq!(c0[1], (CubeMap::corner(&[true]), -1));
        for n in 0..6 {
            assert_eq!(corner_signs(n).iter().map(|c| c.1 as i32).sum::<i32>(), 0);
        }
    }
}
