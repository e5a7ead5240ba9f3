//! Graded free Lie rings over the integers, their quotients by homogeneous
//! ideals, and towers of induced endomorphisms.

mod hall;
mod quotient;
mod tower;

pub use hall::{
    build_hall_basis, witt_dimension, HallOrder, HallWord, Shape, Sparse, StructureTable,
    DEFAULT_WORD_BOUND, TABLE_VERSION,
};
pub use quotient::{
    ideal_quotient, metabelian_truncation, orientable_relator, DegreePiece, DegreeSummary,
    GradedQuotient, Homogeneous, QuotientSummary,
};
pub use tower::{
    degree_determinants, eigenvalue_one_first_degree, induced_tower, induced_tower_to,
    InducedTower,
};
