use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Canonical key of a generator. The bytes are produced by whichever module
/// owns the diagrams; the linear algebra never looks inside.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Key(Box<[u8]>);

impl Key {
    pub fn new(bytes: impl Into<Box<[u8]>>) -> Key {
        Key(bytes.into())
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl From<&str> for Key {
    fn from(s: &str) -> Key {
        Key::new(s.as_bytes())
    }
}

impl From<String> for Key {
    fn from(s: String) -> Key {
        Key::new(s.into_bytes())
    }
}

impl From<Vec<u8>> for Key {
    fn from(v: Vec<u8>) -> Key {
        Key::new(v)
    }
}

impl fmt::Display for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match std::str::from_utf8(&self.0) {
            Ok(s) if s.chars().all(|c| !c.is_control()) => write!(f, "\"{s}\""),
            _ => {
                f.write_str("0x")?;
                for b in self.0.iter() {
                    write!(f, "{b:02x}")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Debug for Key {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A finite integer linear combination of keys. Zero coefficients are never
/// stored, so two sums are equal exactly when their term maps are.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormalSum {
    terms: BTreeMap<Key, BigInt>,
}

impl FormalSum {
    pub fn new() -> FormalSum {
        FormalSum::default()
    }

    pub fn single(key: Key) -> FormalSum {
        let mut s = FormalSum::new();
        s.add_term(key, 1);
        s
    }

    pub fn add_term(&mut self, key: Key, coeff: impl Into<BigInt>) {
        let coeff = coeff.into();
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `coeff * other` in place.
    pub fn add_scaled(&mut self, other: &FormalSum, coeff: &BigInt) {
        if coeff.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * coeff);
        }
    }

    pub fn coeff(&self, key: &Key) -> BigInt {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Key, &BigInt)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &Key> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Sum of all coefficients.
    pub fn augmentation(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn scaled(&self, c: &BigInt) -> FormalSum {
        let mut out = FormalSum::new();
        out.add_scaled(self, c);
        out
    }

    /// The same sum or its negative, whichever has a positive first
    /// coefficient. Used to deduplicate relation rows.
    pub fn sign_normalized(self) -> FormalSum {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => -self,
            _ => self,
        }
    }
}

impl FromIterator<(Key, BigInt)> for FormalSum {
    fn from_iter<I: IntoIterator<Item = (Key, BigInt)>>(iter: I) -> FormalSum {
        let mut s = FormalSum::new();
        for (k, c) in iter {
            s.add_term(k, c);
        }
        s
    }
}

impl fmt::Debug for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let sep = match (i, c.is_negative()) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let mag = c.abs();
            if mag.is_one() {
                write!(f, "{sep}{k}")?;
            } else {
                write!(f, "{sep}{mag}*{k}")?;
            }
        }
        Ok(())
    }
}

impl AddAssign<&FormalSum> for FormalSum {
    fn add_assign(&mut self, rhs: &FormalSum) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl SubAssign<&FormalSum> for FormalSum {
    fn sub_assign(&mut self, rhs: &FormalSum) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v);
        }
    }
}

impl Add for FormalSum {
    type Output = FormalSum;
    fn add(mut self, rhs: FormalSum) -> FormalSum {
        self += &rhs;
        self
    }
}

impl Sub for FormalSum {
    type Output = FormalSum;
    fn sub(mut self, rhs: FormalSum) -> FormalSum {
        self -= &rhs;
        self
    }
}

impl Neg for FormalSum {
    type Output = FormalSum;
    fn neg(mut self) -> FormalSum {
        for v in self.terms.values_mut() {
            *v = -std::mem::take(v);
        }
        self
    }
}

impl Mul<&BigInt> for FormalSum {
    type Output = FormalSum;
    fn mul(self, rhs: &BigInt) -> FormalSum {
        if rhs.is_zero() {
            return FormalSum::new();
        }
        let mut out = self;
        for v in out.terms.values_mut() {
            *v *= rhs;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_removes_terms() {
        let mut s = FormalSum::single(Key::from("a"));
        s.add_term(Key::from("a"), -1);
        assert!(s.is_zero());
        assert_eq!(s, FormalSum::new());
    }

    #[test]
    fn sign_normalization() {
        let s: FormalSum = [(Key::from("a"), BigInt::from(-2)), (Key::from("b"), BigInt::from(3))]
            .into_iter()
            .collect();
        let n = s.clone().sign_normalized();
        assert_eq!(n.coeff(&Key::from("a")), BigInt::from(2));
        assert_eq!(n, (-s).sign_normalized());
    }

    #[test]
    fn display_is_readable() {
        let mut s = FormalSum::single(Key::from("ab"));
        s.add_term(Key::from("a"), -2);
        assert_eq!(s.to_string(), "-2*\"a\" + \"ab\"");
        assert_eq!(Key::new(vec![0u8, 255]).to_string(), "0x00ff");
    }
}
