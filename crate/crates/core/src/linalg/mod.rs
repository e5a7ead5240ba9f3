//! Exact integer matrices, polynomials and the kernels built on them.

mod charpoly;
mod matrix;
mod poly;
mod smith;
mod spectrum;

pub use charpoly::charpoly;
pub use matrix::IntMatrix;
pub use poly::IntPoly;
pub use smith::{lattice_basis, smith_normal_form, SmithDecomposition};
pub use spectrum::{
    dominance_root_test, from_power_sums, kfold_product_spectrum, kfold_value_at_one_is_nonzero,
    palindromic_check, power_sums, product_spectrum, reciprocal_symmetry_check, resultant,
    Symmetry, EXACT_KFOLD_DEGREE,
};
