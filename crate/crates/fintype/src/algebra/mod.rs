//! Exact linear algebra over the integers and prime fields.
//!
//! Everything downstream speaks [`FormalSum`]: a finite integer combination
//! of opaque byte-string keys. Relation rows are assembled into a
//! [`SparseIntMatrix`] against a [`ColumnIndex`], then reduced mod p or put
//! into Smith normal form.

mod formal_sum;
mod matrix;
mod modp;
mod snf;

pub use formal_sum::{FormalSum, Key};
pub use matrix::{ColumnIndex, SparseIntMatrix};
pub use modp::{coset_vector, is_prime, rank_mod_p, row_reduce_mod_p, RowBasis};
pub use snf::{smith_normal_form, smith_normal_form_with_limit, AbelianInvariants, DEFAULT_SNF_LIMIT};
