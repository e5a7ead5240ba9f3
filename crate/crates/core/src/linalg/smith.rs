//! Smith normal form with unimodular transforms, and integer row echelon
//! bases for sublattices of `Z^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::error::{Error, Result};
use crate::par;

/// `U * M * V = D` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i >= 0`.
///
/// `u_inv` is kept alongside `u` because quotient maps need both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|d| d > &BigInt::one()).collect()
    }

    /// Every invariant factor is 0 or 1.
    pub fn is_torsion_free(&self) -> bool {
        self.torsion().is_empty()
    }

    /// Order of `Z^rows / M Z^cols`, or `None` when infinite.
    pub fn cokernel_order(&self) -> Option<BigInt> {
        if self.rank() < self.d.rows() {
            return None;
        }
        Some(self.diagonal().iter().product())
    }
}

type Rows = Vec<Vec<BigInt>>;

struct Work {
    d: Rows,
    u: Rows,
    u_inv: Rows,
    v: Rows,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.d.swap(i, j);
        self.u.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.d.iter_mut().chain(self.v.iter_mut()) {
            row.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.d[i].iter_mut().chain(self.u[i].iter_mut()) {
            *x = -&*x;
        }
        for row in &mut self.u_inv {
            row[i] = -&row[i];
        }
    }

    /// `row_i += c * row_j`
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        let (dj, uj) = (self.d[j].clone(), self.u[j].clone());
        axpy(&mut self.d[i], c, &dj);
        axpy(&mut self.u[i], c, &uj);
        for row in &mut self.u_inv {
            let t = &row[i] * c;
            row[j] -= t;
        }
    }

    /// Clears column `t` below the pivot with floor quotients. Returns true
    /// if every remainder vanished.
    fn eliminate_column(&mut self, t: usize) -> bool {
        let p = self.d[t][t].clone();
        let q: Vec<BigInt> = self.d.iter().map(|r| r[t].div_floor(&p)).collect();
        let (dt, ut) = (self.d[t].clone(), self.u[t].clone());
        par::for_each_mut(&mut self.d[t + 1..], |k, row| {
            let c = &q[t + 1 + k];
            if !c.is_zero() {
                axpy(row, &-c, &dt);
            }
        });
        par::for_each_mut(&mut self.u[t + 1..], |k, row| {
            let c = &q[t + 1 + k];
            if !c.is_zero() {
                axpy(row, &-c, &ut);
            }
        });
        par::for_each_mut(&mut self.u_inv, |_, row| {
            let mut acc = BigInt::zero();
            for (i, c) in q.iter().enumerate().skip(t + 1) {
                if !c.is_zero() && !row[i].is_zero() {
                    acc += c * &row[i];
                }
            }
            row[t] += acc;
        });
        self.d[t + 1..].iter().all(|r| r[t].is_zero())
    }

    /// Clears row `t` right of the pivot. Returns true if every remainder vanished.
    fn eliminate_row(&mut self, t: usize) -> bool {
        let p = self.d[t][t].clone();
        let q: Vec<BigInt> = self.d[t].iter().map(|x| x.div_floor(&p)).collect();
        let apply = |_: usize, row: &mut Vec<BigInt>| {
            let base = row[t].clone();
            if base.is_zero() {
                return;
            }
            for (j, c) in q.iter().enumerate().skip(t + 1) {
                if !c.is_zero() {
                    row[j] -= c * &base;
                }
            }
        };
        par::for_each_mut(&mut self.d, apply);
        par::for_each_mut(&mut self.v, apply);
        self.d[t][t + 1..].iter().all(Zero::is_zero)
    }
}

fn axpy(dst: &mut [BigInt], c: &BigInt, src: &[BigInt]) {
    for (x, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *x += c * s;
        }
    }
}

fn identity_rows(n: usize) -> Rows {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn to_matrix(rows: Rows, cols: usize) -> IntMatrix {
    IntMatrix::from_rows(rows, cols).expect("rectangular by construction")
}

/// Smith normal form of an arbitrary integer matrix. The identity
/// `U * M * V = D` and `U * U_inv = I` are checked before returning.
pub fn smith_normal_form(m: &IntMatrix) -> Result<SmithDecomposition> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        d: m.to_rows(),
        u: identity_rows(rows),
        u_inv: identity_rows(rows),
        v: identity_rows(cols),
    };
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero magnitude in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = &w.d[i][j];
                    if x.is_zero() {
                        continue;
                    }
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => x.abs() < w.d[bi][bj].abs(),
                    };
                    if better {
                        best = Some((i, j));
                        if x.abs().is_one() {
                            break;
                        }
                    }
                }
            }
            let Some((bi, bj)) = best else {
                break;
            };
            w.swap_rows(t, bi);
            w.swap_cols(t, bj);
            if !w.eliminate_column(t) {
                continue;
            }
            if !w.eliminate_row(t) {
                continue;
            }
            let p = w.d[t][t].clone();
            let offender = (t + 1..rows).find(|&i| w.d[i][t + 1..].iter().any(|x| !x.is_multiple_of(&p)));
            if let Some(i) = offender {
                w.add_row(t, i, &BigInt::one());
                continue;
            }
            if p.is_negative() {
                w.negate_row(t);
            }
            break;
        }
    }
    let dec = SmithDecomposition {
        u: to_matrix(w.u, rows),
        u_inv: to_matrix(w.u_inv, rows),
        d: to_matrix(w.d, cols),
        v: to_matrix(w.v, cols),
    };
    verify(m, &dec)?;
    Ok(dec)
}

fn verify(m: &IntMatrix, s: &SmithDecomposition) -> Result<()> {
    let umv = s.u.checked_mul(m)?.checked_mul(&s.v)?;
    if umv != s.d {
        return Err(Error::Verification("U*M*V differs from D".into()));
    }
    if !s.u.checked_mul(&s.u_inv)?.is_identity() {
        return Err(Error::Verification("U_inv is not the inverse of U".into()));
    }
    let diag = s.diagonal();
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return Err(Error::Verification("D is not diagonal".into()));
            }
        }
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok || w[0].is_negative() {
            return Err(Error::Verification("divisibility chain broken".into()));
        }
    }
    Ok(())
}

/// Row-echelon basis (over `Z`) of the lattice spanned by `vectors` in `Z^n`.
///
/// The result has full row rank and spans exactly the same lattice; pivots
/// are positive and strictly increasing in column.
pub fn lattice_basis(vectors: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    let mut pool: Vec<Vec<BigInt>> = vectors
        .iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            let mut idx: Vec<usize> = (0..pool.len()).filter(|&i| !pool[i][col].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by(|&a, &b| pool[a][col].abs().cmp(&pool[b][col].abs()));
            let piv = idx[0];
            let pv = pool[piv].clone();
            let p = pv[col].clone();
            let rest = &idx[1..];
            if rest.is_empty() {
                let mut v = pool.swap_remove(piv);
                if p.is_negative() {
                    v.iter_mut().for_each(|x| *x = -&*x);
                }
                basis.push(v);
                break;
            }
            let targets: Vec<usize> = rest.to_vec();
            let updated: Vec<Vec<BigInt>> = par::map(&targets, |&i| {
                let mut v = pool[i].clone();
                let q = v[col].div_floor(&p);
                axpy(&mut v, &-q, &pv);
                v
            });
            for (i, v) in targets.into_iter().zip(updated) {
                pool[i] = v;
            }
            pool.retain(|v| v.iter().any(|x| !x.is_zero()));
        }
        pool.retain(|v| v.iter().any(|x| !x.is_zero()));
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn snf(rows: &[&[i64]]) -> SmithDecomposition {
        let m = IntMatrix::from_i64_rows(rows);
        smith_normal_form(&m).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn coprime_diagonal() {
        assert_eq!(snf(&[&[2, 0], &[0, 3]]).diagonal(), ints(&[1, 6]));
    }

    #[test]
    fn unit_cokernel() {
        let m = IntMatrix::from_i64_rows(&[[0, 1], [1, 1]]);
        let s = smith_normal_form(&m.identity_minus().unwrap()).unwrap();
        assert_eq!(s.diagonal(), ints(&[1, 1]));
        assert_eq!(s.cokernel_order(), Some(BigInt::one()));
    }

    #[test]
    fn zero_matrix() {
        let s = snf(&[&[0, 0], &[0, 0]]);
        assert_eq!(s.diagonal(), ints(&[0, 0]));
        assert_eq!(s.cokernel_order(), None);
    }

    #[test]
    fn rectangular_with_torsion() {
        let s = snf(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        assert_eq!(s.diagonal(), ints(&[2, 6, 12]));
        let s = snf(&[&[4, 6], &[6, 9], &[2, 3]]);
        assert_eq!(s.diagonal(), ints(&[1, 0]));
        assert_eq!(s.rank(), 1);
    }

    #[test]
    fn lattice_basis_spans() {
        let v = vec![ints(&[2, 4, 0]), ints(&[3, 6, 1]), ints(&[5, 10, 1])];
        let b = lattice_basis(&v, 3);
        assert_eq!(b, vec![ints(&[1, 2, 1]), ints(&[0, 0, 2])]);
    }
}
