//! The S-construction: `Ar[n]`, grids, `S_n C`, cofiber-sequence categories, the object
//! simplicial set and the nerve of weak equivalences.

pub mod arrow;
pub mod double;
pub mod ecat;
pub mod grid;
pub mod objects;
pub mod sn;

pub use arrow::{arrow_category, arrows, Arrows};
pub use double::{check_transpose, from_2_of_n, from_n_of_2, DoubleGrid, TransposeReport};
pub use ecat::{e_category, CofSeq, ECat, EData};
pub use grid::{enumerate_grids, grid_from_quotients, quotient_map, simplicial_operator, GapGrid, GridJson, Operator};
pub use objects::{diagonal_nerve_w, object_simplicial_set, ObjectSet, WeqChain};
pub use sn::{s_n_category, weq_category, weq_functor, SnCategory, SnData, DEFAULT_GRID_BUDGET};
