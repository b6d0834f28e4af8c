//! The cube category, alternating corner sums, and the cubical complex of a
//! monoid generating set together with its ring-quotient oracle.

mod cube_map;
mod monoid;

pub use cube_map::{corner_signs, CubeMap};
pub use monoid::{monoid_complex_presentation, monoid_ring_oracle, MonoidTable};

use crate::algebra::{smith_normal_form, AbelianInvariants, ColumnIndex, FormalSum, Key, SparseIntMatrix};
use crate::Result;

/// Generators and relations of a universal abelian group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generator_keys: Vec<Key>,
    pub relations: Vec<FormalSum>,
}

impl Presentation {
    /// Checks that every relation only mentions listed generators.
    pub fn validate(&self) -> Result<()> {
        let cols = ColumnIndex::new(self.generator_keys.iter().cloned())?;
        for r in &self.relations {
            for k in r.keys() {
                cols.require(k)?;
            }
        }
        Ok(())
    }

    pub fn relation_matrix(&self) -> Result<(ColumnIndex, SparseIntMatrix)> {
        let cols = ColumnIndex::new(self.generator_keys.iter().cloned())?;
        let m = SparseIntMatrix::from_rows(&self.relations, &cols)?;
        Ok((cols, m))
    }
}

/// Abelian invariants of the group presented by `p`.
pub fn presentation_invariants(p: &Presentation) -> Result<AbelianInvariants> {
    let (_, m) = p.relation_matrix()?;
    smith_normal_form(&m)
}

pub(crate) fn dedup_rows(rows: impl IntoIterator<Item = FormalSum>) -> Vec<FormalSum> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for r in rows {
        if r.is_zero() {
            continue;
        }
        let r = r.sign_normalized();
        if seen.insert(r.clone()) {
            out.push(r);
        }
    }
    out
}

