//! Eigenvalues of `M_i` are `i`-fold products of eigenvalues of `S`.

use crate::error::Result;
use crate::lie::{induced_tower_to, StructureTable};
use crate::linalg::{charpoly, kfold_product_spectrum, IntMatrix};

/// True iff the squarefree part of `charpoly(M_i)` divides the squarefree
/// part of the `i`-fold product spectrum of `charpoly(S)`.
pub fn spectrum_crosscheck(s: &IntMatrix, t: &StructureTable, i: usize) -> Result<bool> {
    let tower = induced_tower_to(t, s, i)?;
    let lhs = charpoly(tower.degree(i))?.squarefree_part()?;
    let rhs = kfold_product_spectrum(&charpoly(s)?, i)?.squarefree_part()?;
    lhs.divides(&rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_hall_basis;
    use crate::linalg::IntPoly;

    #[test]
    fn diagonal_degree_two() {
        let t = build_hall_basis(2, 2).unwrap();
        let s = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        let tower = induced_tower_to(&t, &s, 2).unwrap();
        assert_eq!(charpoly(tower.degree(2)).unwrap(), IntPoly::from_i64(&[-6, 1]));
        assert!(spectrum_crosscheck(&s, &t, 2).unwrap());
    }

    #[test]
    fn fibonacci_degree_three() {
        let t = build_hall_basis(2, 3).unwrap();
        let s = IntMatrix::from_i64_rows(&[[0, 1], [1, 1]]);
        assert!(spectrum_crosscheck(&s, &t, 3).unwrap());
    }
}
