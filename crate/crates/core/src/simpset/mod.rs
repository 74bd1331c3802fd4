//! Truncated simplicial sets: constructors, limits, diagonals, validation and homology.

pub mod bisimplicial;
pub mod constructors;
pub mod cotensor;
pub mod homology;
pub mod limits;
pub mod map;
pub mod monotone;
pub mod snf;
pub mod sset;
pub mod validate;

pub use bisimplicial::{diagonal, diagonal_map, BiOps, BisimplicialMap, BisimplicialSet};
pub use constructors::{basic_complex, interval_groupoid, standard, BasicKind};
pub use cotensor::{cotensor_constrained, cotensor_full_on, cotensor_into_coskeletal, Cotensor, MapSearch, TargetIndex};
pub use homology::{component_count, components, homology, AbelianGroup, HomologyResult};
pub use limits::{pairing, product, product_index, product_projections, pullback, Pullback};
pub use map::SimplicialMap;
pub use monotone::Monotone;
pub use snf::{smith_normal_form, SnfResult, SparseMatrix};
pub use sset::{RawSimplicialSet, SimplicialSet};
pub use validate::{eilenberg_zilber_defects, validate_simplicial_identities, IdentityReport, Violation};
