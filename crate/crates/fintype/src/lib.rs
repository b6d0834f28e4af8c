pub mod algebra;
pub mod comb;
pub mod cubes;
pub mod diagrams;
pub mod error;
pub mod looms;
pub mod vtk;

pub use error::{Error, Result};

// The book chapters are compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/algebra.md")]
    mod algebra {}
    #[doc = include_str!("../../../book/src/cubes.md")]
    mod cubes {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/vtk.md")]
    mod vtk {}
    #[doc = include_str!("../../../book/src/looms.md")]
    mod looms {}
    #[doc = include_str!("../../../book/src/comb.md")]
    mod comb {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
