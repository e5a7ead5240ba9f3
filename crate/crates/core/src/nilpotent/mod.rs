//! Free nilpotent groups: Malcev coordinates, powers, roots and the padding
//! identity used to build automorphisms of non-orientable surface quotients.

mod group;
mod magnus;
mod mpoly;
mod power;
mod scalar;

pub use group::{MalcevElement, NilpotentGroup};
pub use magnus::{Layout, Series};
pub use mpoly::MPoly;
pub use power::{
    build_power_table, padding_in_subgroup, padding_word, power_padding, power_table_of,
    substitute, PaddingWord, PowerPolynomialTable, MAX_SYMBOLIC_COORDS,
};
pub use scalar::Scalar;
