//! Exact linear algebra over ℚ and F_p: scalars, graded bases, sparse maps,
//! chain complexes and weight-filtered homology.

mod basis;
mod complex;
mod echelon;
mod field;
mod filtered;
mod map;
mod sparse;

pub use basis::{BasisElement, GradedBasis};
pub use complex::{
    is_quasi_iso, span_membership, span_rank, ChainComplexSlice, ChainMap, HomologyReport,
    TruncationBetti, Verdict,
};
pub use echelon::{in_span, kernel_of, rank_of, Echelon, Inserted};
pub use field::{Field, Scalar};
pub use filtered::{induced_rank, FilteredComplex, Key};
pub use map::{rank, LinearMap};
pub use sparse::Vector;
