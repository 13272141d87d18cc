//! Finite categories, delta lenses, and the algebraic weak factorisation
//! system whose algebras are delta lenses.

pub mod awfs;
pub mod corpus;
pub mod error;
pub mod factorization;
pub mod kernel;
pub mod laws;
pub mod lens;
pub mod report;
pub mod semimonad;

pub use awfs::{e_object, free_lens, EfMorphism, EfPresentation, LCoalgebra, RAlgebra};
pub use error::{Error, Result};
pub use factorization::{
    comprehensive_factorise, is_discrete_opfibration, is_initial, orthogonal_lift, CommutingSquare,
    Factorisation,
};
pub use kernel::*;
pub use laws::{run_laws, LawScope, LawSuiteResult, Suite};
pub use lens::{
    compose_lenses, enumerate_lens_structures, is_discrete_opfibration_lens, lambda_presentation,
    lens_from_discrete_opfibration, lens_from_lambda, validate_lens, validate_lens_morphism,
    DeltaLens, LambdaPresentation, LiftingTable,
};
pub use report::{ValidationReport, Violation};
pub use semimonad::{
    enumerate_algebra_candidates, enumerate_jr_algebras, j_object, j_square, j_square_by_lifting,
    jr_from_lens, lens_from_jr, nu, nu_by_lifting, validate_jr_algebra, validate_jr_morphism,
    validate_semimonad, validate_semimonad_with, JPresentation, JrAlgebra,
};
