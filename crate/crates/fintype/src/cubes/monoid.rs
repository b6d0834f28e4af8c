use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Deserialize;

use super::{dedup_rows, Presentation};
use crate::algebra::{smith_normal_form, AbelianInvariants, FormalSum, Key, SparseIntMatrix};
use crate::{Error, Result};

/// A finite monoid given by its multiplication table, with a generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidTable {
    names: Vec<String>,
    identity: usize,
    product: Vec<Vec<usize>>,
    generators: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MonoidJson {
    elements: Vec<String>,
    identity: Entry,
    generators: Vec<Entry>,
    product: Vec<Vec<Entry>>,
}

impl MonoidTable {
    /// Validates associativity, the identity laws, and that the generators
    /// reach every element.
    pub fn new(
        names: Vec<String>,
        identity: usize,
        product: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<MonoidTable> {
        let n = names.len();
        let bad = |r: String| Err(Error::invalid("monoid", r));
        if n == 0 {
            return bad("no elements".into());
        }
        if identity >= n || generators.iter().any(|&g| g >= n) {
            return bad("element index out of range".into());
        }
        if product.len() != n || product.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad(format!("product table must be {n}x{n} over element indices"));
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = names.iter().find(|x| !seen.insert(*x)) {
            return bad(format!("duplicate element name {dup:?}"));
        }
        for a in 0..n {
            if product[identity][a] != a || product[a][identity] != a {
                return bad(format!("{} is not a two-sided identity", names[identity]));
            }
            for b in 0..n {
                for c in 0..n {
                    if product[product[a][b]][c] != product[a][product[b][c]] {
                        return bad(format!("({0}{1}){2} != {0}({1}{2})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let mut reached = vec![false; n];
        reached[identity] = true;
        let mut frontier = vec![identity];
        while let Some(x) = frontier.pop() {
            for &g in &generators {
                let y = product[x][g];
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
        if let Some(x) = reached.iter().position(|r| !r) {
            return bad(format!("{} is not a product of generators", names[x]));
        }
        Ok(MonoidTable { names, identity, product, generators })
    }

    /// Parses `{"elements": [...], "identity": e, "generators": [...],
    /// "product": [[...]]}`; entries may be element names or indices.
    pub fn from_json(text: &str) -> Result<MonoidTable> {
        let j: MonoidJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let idx: HashMap<&str, usize> = j.elements.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let look = |e: &Entry| match e {
            Entry::Index(i) => Ok(*i),
            Entry::Name(s) => idx.get(s.as_str()).copied().ok_or_else(|| Error::Parse(format!("unknown element {s:?}"))),
        };
        let identity = look(&j.identity)?;
        let generators = j.generators.iter().map(look).collect::<Result<_>>()?;
        let product =
            j.product.iter().map(|r| r.iter().map(look).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        MonoidTable::new(j.elements, identity, product, generators)
    }

    pub fn trivial() -> MonoidTable {
        MonoidTable::new(vec!["e".into()], 0, vec![vec![0]], vec![0]).expect("trivial monoid")
    }

    /// Z/k written additively, generated by 1.
    pub fn cyclic(k: usize) -> MonoidTable {
        let names = (0..k).map(|i| i.to_string()).collect();
        let product = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        MonoidTable::new(names, 0, product, vec![1 % k]).expect("cyclic group")
    }

    /// Direct product, generated by the images of both generating sets.
    pub fn product(a: &MonoidTable, b: &MonoidTable) -> MonoidTable {
        let nb = b.len();
        let names = a.names.iter().flat_map(|x| b.names.iter().map(move |y| format!("({x},{y})"))).collect();
        let n = a.len() * nb;
        let product = (0..n)
            .map(|u| (0..n).map(|v| a.product[u / nb][v / nb] * nb + b.product[u % nb][v % nb]).collect())
            .collect();
        let mut gens: Vec<usize> = a.generators.iter().map(|&g| g * nb + b.identity).collect();
        gens.extend(b.generators.iter().map(|&g| a.identity * nb + g));
        MonoidTable::new(names, a.identity * nb + b.identity, product, gens).expect("product monoid")
    }

    /// The same monoid with every element as a generator.
    pub fn with_all_generators(mut self) -> MonoidTable {
        self.generators = (0..self.len()).collect();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a][b]
    }

    fn key(&self, x: usize) -> Key {
        Key::from(self.names[x].as_str())
    }

    /// Number of cube cells of dimension `n + 1` with σ = id.
    fn cell_count(&self, n: usize) -> u128 {
        (self.len() as u128).pow(n as u32 + 2) * (self.generators.len() as u128).pow(n as u32 + 1)
    }

    /// Calls `visit` with `(x_0..x_{n+1}, y_1..y_{n+1})` for all tuples whose
    /// `x_0` is `first`, in lexicographic order.
    fn for_each_cell(&self, n: usize, first: usize, mut visit: impl FnMut(&[usize], &[usize])) {
        if self.generators.is_empty() {
            return;
        }
        let mut xs = vec![0usize; n + 2];
        let mut ys = vec![0usize; n + 1];
        xs[0] = first;
        let (nx, ny) = (self.len(), self.generators.len());
        loop {
            let yv: Vec<usize> = ys.iter().map(|&i| self.generators[i]).collect();
            visit(&xs, &yv);
            // odometer over xs[1..] then ys, last coordinate fastest
            let mut i = n + 1 + n + 1;
            loop {
                if i == 0 {
                    return;
                }
                let (slot, max) = if i <= n + 1 { (&mut xs[i], nx) } else { (&mut ys[i - n - 2], ny) };
                *slot += 1;
                if *slot < max {
                    break;
                }
                *slot = 0;
                i -= 1;
            }
        }
    }
}

const CELL_CAP: u128 = 50_000_000;

fn check_cells(m: &MonoidTable, n: usize) -> Result<()> {
    let c = m.cell_count(n);
    if c > CELL_CAP {
        return Err(Error::Cap { what: format!("{c} cube cells"), cap: CELL_CAP });
    }
    Ok(())
}

/// Generators are the monoid elements; each `(n+1)`-cell gives the
/// alternating corner sum of `b ↦ x_0 y_1^{b_1} x_1 ⋯ y_{n+1}^{b_{n+1}} x_{n+1}`.
/// Rows are sign-normalized and deduplicated.
pub fn monoid_complex_presentation(m: &MonoidTable, n: usize) -> Result<Presentation> {
    check_cells(m, n)?;
    let corners = super::corner_signs(n);
    let per_first: Vec<Vec<FormalSum>> = (0..m.len())
        .into_par_iter()
        .map(|x0| {
            let mut rows = Vec::new();
            m.for_each_cell(n, x0, |xs, ys| {
                let mut row = FormalSum::new();
                for (corner, sign) in &corners {
                    let mut acc = xs[0];
                    for i in 0..=n {
                        if corner.s(i + 1) == Some(true) {
                            acc = m.mul(acc, ys[i]);
                        }
                        acc = m.mul(acc, xs[i + 1]);
                    }
                    row.add_term(m.key(acc), *sign as i64);
                }
                rows.push(row);
            });
            dedup_rows(rows)
        })
        .collect();
    Ok(Presentation {
        generator_keys: (0..m.len()).map(|x| m.key(x)).collect(),
        relations: dedup_rows(per_first.into_iter().flatten()),
    })
}

/// `Z[M]/J^{n+1}` computed with ring arithmetic in the monoid ring, where
/// `J` is generated by the elements `1 - y` for generators `y`.
pub fn monoid_ring_oracle(m: &MonoidTable, n: usize) -> Result<AbelianInvariants> {
    check_cells(m, n)?;
    let size = m.len();
    let times = |v: &[BigInt], g: usize| {
        let mut out = vec![BigInt::from(0); size];
        for (x, c) in v.iter().enumerate() {
            out[m.mul(x, g)] += c;
        }
        out
    };
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for x0 in 0..size {
        m.for_each_cell(n, x0, |xs, ys| {
            let mut v = vec![BigInt::from(0); size];
            v[xs[0]] = BigInt::from(1);
            for i in 0..=n {
                let shifted = times(&v, ys[i]);
                for (a, b) in v.iter_mut().zip(shifted) {
                    *a -= b;
                }
                v = times(&v, xs[i + 1]);
            }
            if v.iter().any(|c| c != &BigInt::from(0)) && seen.insert(v.clone()) {
                rows.push(v);
            }
        });
    }
    let entries = rows
        .iter()
        .enumerate()
        .flat_map(|(r, v)| v.iter().enumerate().map(move |(c, x)| (r, c, x.clone())));
    let mat = SparseIntMatrix::new(rows.len(), size, entries)?;
    smith_normal_form(&mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubes::presentation_invariants;

    fn inv(torsion: &[i64], free_rank: usize) -> AbelianInvariants {
        AbelianInvariants { torsion: torsion.iter().map(|&d| BigInt::from(d)).collect(), free_rank }
    }

    #[test]
    fn z2_examples() {
        let z2 = MonoidTable::cyclic(2);
        assert_eq!(presentation_invariants(&monoid_complex_presentation(&z2, 0).unwrap()).unwrap(), inv(&[], 1));
        assert_eq!(presentation_invariants(&monoid_complex_presentation(&z2, 1).unwrap()).unwrap(), inv(&[2], 1));
        assert_eq!(monoid_ring_oracle(&z2, 1).unwrap(), inv(&[2], 1));
        assert_eq!(monoid_ring_oracle(&MonoidTable::cyclic(3), 0).unwrap(), inv(&[], 1));
    }

    #[test]
    fn trivial_monoid_is_z() {
        for n in 0..4 {
            let p = monoid_complex_presentation(&MonoidTable::trivial(), n).unwrap();
            assert!(p.relations.is_empty());
            assert_eq!(presentation_invariants(&p).unwrap(), inv(&[], 1));
        }
    }

    #[test]
    fn json_round() {
        let m = MonoidTable::from_json(
            r#"{"elements":["e","a"],"identity":"e","generators":["a"],"product":[["e","a"],["a","e"]]}"#,
        )
        .unwrap();
        assert_eq!(m, MonoidTable::cyclic(2).renamed(&["e", "a"]));
        assert!(MonoidTable::from_json(r#"{"elements":["e","a"],"identity":0,"generators":[],"product":[[0,1],[1,0]]}"#).is_err());
        assert!(MonoidTable::from_json(r#"{"elements":["e","a"],"identity":0,"generators":[1],"product":[[0,1],[1,1]]}"#).is_ok());
        assert!(MonoidTable::from_json(r#"{"elements":["e","a"],"identity":0,"generators":[1],"product":[[0,1],[0,1]]}"#).is_err());
    }

    impl MonoidTable {
        fn renamed(mut self, names: &[&str]) -> MonoidTable {
            self.names = names.iter().map(|s| s.to_string()).collect();
            self
        }
    }
}
