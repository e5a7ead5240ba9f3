//! Endomorphisms of the graded free Lie ring induced by a degree-one matrix.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::hall::{Shape, StructureTable};
use super::quotient::GradedQuotient;
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::par;

/// `mats[i - 1]` is the matrix of the induced map on degree `i`, acting on
/// column vectors of Hall coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InducedTower {
    pub base: IntMatrix,
    pub mats: Vec<IntMatrix>,
}

impl InducedTower {
    pub fn class(&self) -> usize {
        self.mats.len()
    }

    pub fn degree(&self, i: usize) -> &IntMatrix {
        &self.mats[i - 1]
    }
}

/// Extends `s` to every degree of `t`.
pub fn induced_tower(t: &StructureTable, s: &IntMatrix) -> Result<InducedTower> {
    induced_tower_to(t, s, t.class())
}

/// Extends `s` to degrees `1..=up_to`. Column `j` of `s` is the image of
/// generator `j`; the image of `[u, v]` is the bracket of the images.
pub fn induced_tower_to(t: &StructureTable, s: &IntMatrix, up_to: usize) -> Result<InducedTower> {
    let r = t.rank();
    if s.rows() != r || s.cols() != r {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, Lie ring has rank {r}",
            s.rows(),
            s.cols()
        )));
    }
    if up_to > t.class() {
        return Err(Error::InvalidArgument(format!(
            "tower requested to degree {up_to} beyond class {}",
            t.class()
        )));
    }
    // images[global index] = dense image vector in its degree
    let mut images: Vec<Vec<BigInt>> = (0..r).map(|j| s.column(j)).collect();
    let mut mats = vec![s.clone()];
    for n in 2..=up_to {
        let range: Vec<usize> = t.degree_range(n).collect();
        let fresh = par::map(&range, |&w| match t.word(w).shape {
            Shape::Bracket(u, v) => {
                let (du, dv) = (t.word(u).degree, t.word(v).degree);
                t.bracket_dense(du, &images[u], dv, &images[v])
            }
            Shape::Generator(_) => unreachable!("generators live in degree one"),
        });
        let dim = t.dim(n);
        mats.push(IntMatrix::from_columns(&fresh, dim)?);
        images.extend(fresh);
    }
    Ok(InducedTower {
        base: s.clone(),
        mats,
    })
}

/// `det(I - M_i)` for `i = 1..=up_to`, on the quotient when given.
pub fn degree_determinants(
    tower: &InducedTower,
    quotient: Option<&GradedQuotient>,
    up_to: usize,
) -> Result<Vec<BigInt>> {
    let up_to = up_to.min(tower.class());
    let degrees: Vec<usize> = (1..=up_to).collect();
    let dets = par::map(&degrees, |&i| -> Result<BigInt> {
        let m = match quotient {
            Some(q) => q.quotient_map(i, tower.degree(i))?,
            None => tower.degree(i).clone(),
        };
        m.identity_minus()?.det()
    });
    dets.into_iter().collect()
}

/// Smallest degree `i <= c` with `det(I - M_i) = 0`, on the quotient when given.
pub fn eigenvalue_one_first_degree(
    tower: &InducedTower,
    quotient: Option<&GradedQuotient>,
    c: usize,
) -> Result<Option<usize>> {
    let dets = degree_determinants(tower, quotient, c)?;
    Ok(dets.iter().position(Zero::is_zero).map(|i| i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::build_hall_basis;

    #[test]
    fn identity_tower() {
        let t = build_hall_basis(3, 4).unwrap();
        let tower = induced_tower(&t, &IntMatrix::identity(3)).unwrap();
        for (i, m) in tower.mats.iter().enumerate() {
            assert!(m.is_identity(), "degree {}", i + 1);
        }
    }

    #[test]
    fn diagonal_weights_multiply() {
        let t = build_hall_basis(2, 3).unwrap();
        let s = IntMatrix::from_i64_rows(&[[2, 0], [0, 3]]);
        let tower = induced_tower(&t, &s).unwrap();
        assert_eq!(tower.degree(2), &IntMatrix::from_i64_rows(&[[6]]));
        // [[x1,x0],x0] -> 12, [[x1,x0],x1] -> 18
        assert_eq!(tower.degree(3), &IntMatrix::from_i64_rows(&[[12, 0], [0, 18]]));
    }

    #[test]
    fn fibonacci_first_eigenvalue_one_at_four() {
        let t = build_hall_basis(2, 5).unwrap();
        let s = IntMatrix::from_i64_rows(&[[0, 1], [1, 1]]);
        let tower = induced_tower(&t, &s).unwrap();
        let dets = degree_determinants(&tower, None, 5).unwrap();
        assert!(dets[..3].iter().all(|d| !d.is_zero()));
        assert!(dets[3].is_zero());
        assert_eq!(eigenvalue_one_first_degree(&tower, None, 5).unwrap(), Some(4));
    }

    #[test]
    fn rejects_wrong_size() {
        let t = build_hall_basis(3, 2).unwrap();
        assert!(induced_tower(&t, &IntMatrix::identity(2)).is_err());
    }
}
