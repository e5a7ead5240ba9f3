//! Division-free characteristic polynomial (Berkowitz).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{IntMatrix, IntPoly};
use crate::error::Result;

/// `det(xI - M)`, monic of degree `dim M`.
///
/// Berkowitz's algorithm: for the leading `k x k` block `A_k`, the next row
/// `R`, column `C` and corner `a`, the charpoly of `A_{k+1}` is the Toeplitz
/// matrix with first column `[1, -a, -R C, -R A_k C, ...]` applied to the
/// charpoly of `A_k`. Only ring operations are used.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    m.require_square()?;
    let n = m.rows();
    // descending coefficients of det(xI - A_k), starting with A_0 (empty).
    let mut p: Vec<BigInt> = vec![BigInt::one()];
    for k in 0..n {
        let a = m.get(k, k);
        let row: Vec<&BigInt> = (0..k).map(|j| m.get(k, j)).collect();
        let mut col: Vec<BigInt> = (0..k).map(|i| m.get(i, k).clone()).collect();

        let mut first = Vec::with_capacity(k + 2);
        first.push(BigInt::one());
        first.push(-a);
        for _ in 0..k {
            let rc: BigInt = row
                .iter()
                .zip(&col)
                .filter(|(_, c)| !c.is_zero())
                .map(|(r, c)| *r * c)
                .sum();
            first.push(-rc);
            col = (0..k)
                .map(|i| {
                    (0..k)
                        .filter(|&j| !col[j].is_zero())
                        .map(|j| m.get(i, j) * &col[j])
                        .sum()
                })
                .collect();
        }

        // (k+2) x (k+1) lower-triangular Toeplitz product
        let next: Vec<BigInt> = (0..k + 2)
            .map(|i| {
                (0..=i.min(k))
                    .filter(|&j| i - j < first.len() && !p[j].is_zero())
                    .map(|j| &first[i - j] * &p[j])
                    .sum()
            })
            .collect();
        p = next;
    }
    p.reverse();
    Ok(IntPoly::new(p))
}
