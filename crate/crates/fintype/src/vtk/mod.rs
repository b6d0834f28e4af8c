//! Finite-type invariants of virtual knots built from chord diagrams with
//! numbered sections.

mod braid;
mod chord;
mod coeff;
mod crosscheck;
mod expand;
mod relations;

pub use braid::{
    braid_word_to_bgd, generator_sum, invariant_sum, positive_resolution, BgdKind, BraidedGaussDiagram, Letter,
    VirtualBraidWord,
};
pub use chord::{enumerate_cds, ChordDiagram, ChordJson, DiagramJson, Endpoint, NumberedChordDiagram};
pub use coeff::{catalan, coeff_f, FTable};
pub use crosscheck::{braid_relation_crosscheck, crosscheck_rows, CrosscheckConfig, CrosscheckRow, RelationFamily};
pub use expand::{u_embed, v_expand};
pub use relations::{
    evaluate_invariant, generate_type1, generate_type3, vtk_dimension, VtkDimension, VtkPresentation, VtkQuotient,
    MAX_RANK,
};
