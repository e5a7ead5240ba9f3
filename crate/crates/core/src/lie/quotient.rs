//! Graded quotients of the free Lie ring by homogeneous ideals: the surface
//! relator ideal and its metabelian four-step truncation.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::hall::StructureTable;
use crate::error::{Error, Result};
use crate::json::Int;
use crate::linalg::{lattice_basis, smith_normal_form, IntMatrix, SmithDecomposition};
use crate::par;

/// Homogeneous element of the free Lie ring: dense coordinates in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homogeneous {
    pub degree: usize,
    pub coords: Vec<BigInt>,
}

/// Ideal and quotient data in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreePiece {
    pub degree: usize,
    pub ambient_dim: usize,
    /// Row-echelon lattice basis of the ideal in this degree.
    pub ideal_basis: Vec<Vec<BigInt>>,
    /// Smith form of the `ambient_dim x ideal_rank` matrix whose columns are
    /// the ideal basis; the quotient lives on the trailing coordinates of `U`.
    pub smith: SmithDecomposition,
}

impl DegreePiece {
    pub fn ideal_rank(&self) -> usize {
        self.ideal_basis.len()
    }

    /// Rank of the quotient lattice modulo torsion.
    pub fn quotient_rank(&self) -> usize {
        self.ambient_dim - self.ideal_rank()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.smith.diagonal()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.smith.is_torsion_free()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQuotient {
    pub rank: usize,
    pub class: usize,
    pub generator: Homogeneous,
    /// `pieces[d - 1]` for `d = 1..=class`.
    pub pieces: Vec<DegreePiece>,
    pub is_metabelian_truncation: bool,
}

fn piece(t: &StructureTable, d: usize, spanning: &[Vec<BigInt>]) -> Result<DegreePiece> {
    let n = t.dim(d);
    let basis = lattice_basis(spanning, n);
    let g = if basis.is_empty() {
        IntMatrix::zeros(n, 0)
    } else {
        IntMatrix::from_columns(&basis, n)?
    };
    let smith = smith_normal_form(&g)?;
    Ok(DegreePiece {
        degree: d,
        ambient_dim: n,
        ideal_basis: basis,
        smith,
    })
}

fn brackets_with_degree(
    t: &StructureTable,
    a: usize,
    vs: &[Vec<BigInt>],
    b: usize,
) -> Vec<Vec<BigInt>> {
    let ws: Vec<usize> = t.degree_range(b).collect();
    let per_v: Vec<Vec<Vec<BigInt>>> = par::map(vs, |v| {
        ws.iter()
            .map(|&w| t.bracket_dense(a, v, b, &t.unit(w)))
            .collect()
    });
    per_v.into_iter().flatten().collect()
}

/// Ideal generated by a homogeneous element, degree by degree up to `up_to`,
/// with the Smith data for each quotient degree.
pub fn ideal_quotient(t: &StructureTable, gen: &Homogeneous, up_to: usize) -> Result<GradedQuotient> {
    let d0 = gen.degree;
    if d0 == 0 || gen.coords.len() != t.dim(d0) {
        return Err(Error::InvalidArgument(format!(
            "generator of degree {d0} must have {} coordinates",
            t.dim(d0)
        )));
    }
    if up_to > t.class() || d0 > up_to {
        return Err(Error::InvalidArgument(format!(
            "cannot build degrees 1..={up_to} (class {}, generator degree {d0})",
            t.class()
        )));
    }
    let mut pieces: Vec<DegreePiece> = Vec::with_capacity(up_to);
    for d in 1..=up_to {
        let spanning: Vec<Vec<BigInt>> = if d < d0 {
            Vec::new()
        } else if d == d0 {
            vec![gen.coords.clone()]
        } else {
            // R_d = [R_{d-1}, L_1] + [R_{d-2}, L_2]; the first term already
            // generates the ideal, the second is a cheap consistency margin.
            let mut s = brackets_with_degree(t, d - 1, &pieces[d - 2].ideal_basis, 1);
            if d >= d0 + 2 {
                s.extend(brackets_with_degree(t, d - 2, &pieces[d - 3].ideal_basis, 2));
            }
            s
        };
        pieces.push(piece(t, d, &spanning)?);
    }
    Ok(GradedQuotient {
        rank: t.rank(),
        class: up_to,
        generator: gen.clone(),
        pieces,
        is_metabelian_truncation: false,
    })
}

/// Degrees `1..=4` of the quotient additionally divided by the second derived
/// ideal, which in degrees at most four is `[L_2, L_2]` in degree four.
pub fn metabelian_truncation(t: &StructureTable, q: &GradedQuotient) -> Result<GradedQuotient> {
    if q.class < 4 || t.class() < 4 {
        return Err(Error::InvalidArgument(format!(
            "metabelian truncation needs class at least 4, have {}",
            q.class.min(t.class())
        )));
    }
    let mut spanning = q.pieces[3].ideal_basis.clone();
    let l2: Vec<usize> = t.degree_range(2).collect();
    for (k, &u) in l2.iter().enumerate() {
        for &v in &l2[k + 1..] {
            spanning.push(t.bracket_dense(2, &t.unit(u), 2, &t.unit(v)));
        }
    }
    let mut pieces: Vec<DegreePiece> = q.pieces[..3].to_vec();
    pieces.push(piece(t, 4, &spanning)?);
    Ok(GradedQuotient {
        rank: q.rank,
        class: 4,
        generator: q.generator.clone(),
        pieces,
        is_metabelian_truncation: true,
    })
}

impl GradedQuotient {
    pub fn piece(&self, d: usize) -> &DegreePiece {
        &self.pieces[d - 1]
    }

    pub fn quotient_ranks(&self) -> Vec<usize> {
        self.pieces.iter().map(DegreePiece::quotient_rank).collect()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.pieces.iter().all(DegreePiece::is_torsion_free)
    }

    /// Matrix of `m` (acting on degree-`d` Hall coordinates) on the quotient
    /// lattice modulo torsion. Fails if `m` does not preserve the ideal.
    pub fn quotient_map(&self, d: usize, m: &IntMatrix) -> Result<IntMatrix> {
        let p = self.piece(d);
        let n = p.ambient_dim;
        if m.rows() != n || m.cols() != n {
            return Err(Error::DimensionMismatch(format!(
                "degree {d} map is {}x{}, lattice has rank {n}",
                m.rows(),
                m.cols()
            )));
        }
        let k = p.ideal_rank();
        if k == 0 {
            return Ok(m.clone());
        }
        // only the quotient rows of U M U^-1 are needed
        let rows = p.smith.u.submatrix(k..n, 0..n).checked_mul(m)?;
        let conj = rows.checked_mul(&p.smith.u_inv)?;
        if !conj.submatrix(0..n - k, 0..k).is_zero() {
            return Err(Error::NotInvariant { degree: d });
        }
        Ok(conj.submatrix(0..n - k, k..n))
    }

    /// Image of a degree-`d` vector in quotient coordinates.
    pub fn project(&self, d: usize, x: &[BigInt]) -> Result<Vec<BigInt>> {
        let p = self.piece(d);
        let y = p.smith.u.mul_vec(x)?;
        Ok(y[p.ideal_rank()..].to_vec())
    }

    pub fn summary(&self) -> QuotientSummary {
        QuotientSummary {
            rank: self.rank,
            class: self.class,
            metabelian: self.is_metabelian_truncation,
            generator_degree: self.generator.degree,
            generator: crate::json::ints(&self.generator.coords),
            degrees: self
                .pieces
                .iter()
                .map(|p| DegreeSummary {
                    degree: p.degree,
                    ambient_dim: p.ambient_dim,
                    ideal_rank: p.ideal_rank(),
                    quotient_rank: p.quotient_rank(),
                    torsion: crate::json::ints(&p.smith.torsion()),
                    ideal_basis: p.ideal_basis.iter().map(|v| crate::json::ints(v)).collect(),
                })
                .collect(),
        }
    }
}

/// Serializable view of a quotient (ideal bases as matrix blocks).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuotientSummary {
    pub rank: usize,
    pub class: usize,
    pub metabelian: bool,
    pub generator_degree: usize,
    pub generator: Vec<Int>,
    pub degrees: Vec<DegreeSummary>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DegreeSummary {
    pub degree: usize,
    pub ambient_dim: usize,
    pub ideal_rank: usize,
    pub quotient_rank: usize,
    pub torsion: Vec<Int>,
    pub ideal_basis: Vec<Vec<Int>>,
}

/// `sum_i [a_i, b_i]` in the degree-2 Hall basis, where `a_i = x_{2i}` and
/// `b_i = x_{2i+1}`.
pub fn orientable_relator(g: usize, t: &StructureTable) -> Result<Homogeneous> {
    if t.rank() != 2 * g {
        return Err(Error::DimensionMismatch(format!(
            "relator for genus {g} needs rank {}, table has rank {}",
            2 * g,
            t.rank()
        )));
    }
    if t.class() < 2 {
        return Err(Error::InvalidArgument("relator lives in degree 2; class must be at least 2".into()));
    }
    let mut coords = vec![BigInt::zero(); t.dim(2)];
    for i in 0..g {
        let e = |j: usize| t.unit(j);
        let b = t.bracket_dense(1, &e(2 * i), 1, &e(2 * i + 1));
        for (c, x) in coords.iter_mut().zip(b) {
            *c += x;
        }
    }
    debug_assert!(coords.iter().filter(|c| !c.is_zero()).all(|c| c.magnitude().is_one()));
    Ok(Homogeneous { degree: 2, coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_hall_basis, HallOrder};

    #[test]
    fn torus_relator() {
        let t = build_hall_basis(2, 2).unwrap();
        let r = orientable_relator(1, &t).unwrap();
        assert_eq!(r.coords, vec![BigInt::from(-1)]);
        let rev = StructureTable::build(2, 2, HallOrder::Reversed, 100).unwrap();
        assert_eq!(orientable_relator(1, &rev).unwrap().coords, vec![BigInt::one()]);
    }

    #[test]
    fn genus_two_ranks() {
        let t = build_hall_basis(4, 4).unwrap();
        let r = orientable_relator(2, &t).unwrap();
        assert_eq!(r.coords.iter().filter(|c| !c.is_zero()).count(), 2);
        let q = ideal_quotient(&t, &r, 4).unwrap();
        assert_eq!(q.quotient_ranks(), vec![4, 5, 16, 45]);
        assert!(q.is_torsion_free());
        assert_eq!(q.piece(1).ideal_rank(), 0);
    }

    #[test]
    fn metabelian_degree_four() {
        let t = build_hall_basis(2, 4).unwrap();
        let zero = Homogeneous {
            degree: 2,
            coords: vec![BigInt::zero()],
        };
        let q = ideal_quotient(&t, &zero, 4).unwrap();
        let m = metabelian_truncation(&t, &q).unwrap();
        assert_eq!(m.piece(4).quotient_rank(), 3);
        assert!(m.is_metabelian_truncation);
    }

    #[test]
    fn rejects_small_class() {
        let t = build_hall_basis(4, 1).unwrap();
        assert!(orientable_relator(2, &t).is_err());
        let t = build_hall_basis(4, 3).unwrap();
        let r = orientable_relator(2, &t).unwrap();
        let q = ideal_quotient(&t, &r, 3).unwrap();
        assert!(metabelian_truncation(&t, &q).is_err());
    }
}
