//! The pushout `Ef` of `ι_A` along `Sf`, the monad `R` and comonad `L` it
//! carries, their algebras and coalgebras, and lifting of lenses against
//! coalgebras.

mod comonad;
mod ef;
mod monad;

pub use comonad::{
    cofree_coalgebra, comonad_data, delta, delta_small, delta_small_by_lifting,
    enumerate_coalgebra_candidates, identity_coalgebra, lift_against_coalgebra, validate_comonad,
    validate_comonad_with, validate_distributive_law, validate_distributive_law_with,
    validate_l_coalgebra, LCoalgebra,
};
pub use ef::{compose_ef, copair, e_object, e_square, EfMorphism, EfPresentation};
pub use monad::{
    enumerate_r_algebra_candidates, enumerate_r_algebras, free_algebra, free_lens,
    jr_from_r_algebra, lens_to_r_algebra, mu, mu_by_copairing, r_algebra_from_jr,
    r_algebra_to_lens, validate_monad, validate_monad_with, validate_r_algebra,
    validate_r_morphism, RAlgebra,
};
