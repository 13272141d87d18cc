//! Finite categories, functors between them, and the small constructions the
//! rest of the crate is built from.

mod category;
mod constructions;
mod enumerate;
mod functor;

pub(crate) use category::pair_name;
pub use category::{validate_category, Built, CategoryBuilder, FinCat, Mor, MorphismData, Obj};
pub(crate) use constructions::CommaData;
pub use constructions::{
    comma_to_object, components, coproduct, coslice, counit_inclusion, discrete, discrete_functor,
    is_connected,
};
pub use enumerate::{candidate_count, enumerate_functors, enumerate_functors_over, Guard};
pub use functor::{is_bijective_on_objects, validate_functor, FinFunctor};

#[cfg(test)]
mod tests;
