pub mod arith;
pub mod builders;
pub mod cohomology;
pub mod complex;
pub mod error;
pub mod homext;
pub mod kronecker;
pub mod ring;
pub mod verdict;

pub use arith::{Field, FieldDesc, Matrix, PrimeField, Rationals};
pub use cohomology::{
    bott_line, cm_regularity, cohomology_table, homological_dimension, CohomologyDim,
    CohomologyTable, HdReport, Hypercohomology,
};
pub use complex::{
    BettiTable, ExactnessReport, FormMatrix, LineComplex, LineTerm, Presentation, PresentationJson,
};
pub use error::{Error, Result};
pub use ring::{dim_forms, monomial_basis, Form, PolyRing, RingDesc};
pub use verdict::{Status, Verdict};
pub mod drivers;
pub use drivers::{
    explore, verify_anyhd, verify_gorenstein, verify_koszul, verify_quiver_dictionary,
    ExploreReport, RunOptions, TheoremReport,
};
