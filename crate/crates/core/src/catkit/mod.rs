//! Finite categories, functors, natural transformations, nerves and `τ₁`.

pub mod category;
pub mod corpus;
pub mod functor;
pub mod nerve;

pub use category::{
    category_pullback, contractible_groupoid, cyclic_group, discrete_category, ordinal, poset_category, terminal_category,
    CategoryPullback, FiniteCategory, MorphismSpec, RawCategory, RawMorphism,
};
pub use corpus::small_corpus;
pub use functor::{check_equivalence_of_categories, EquivalenceReport, FunctorData, InverseWitness, NaturalTransformationData};
pub use nerve::{nerve, nerve_map, nerve_with_chains, tau1, tau1_counit, Nerve, Tau1, DEFAULT_PATH_CAP};
