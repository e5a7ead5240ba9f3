//! Witness automorphism data for the non-orientable surfaces `N_{g+1}`.
//!
//! On the free abelian quotient of rank `g` we use `W = L A^(g-1)` where `A`
//! is the companion-like shift with `m` in the corner and `L` fixes the
//! relation `a_1^2 ... a_g^2 = 1` up to the last generator. `det W = -1` and
//! for `m` large `W` has one real eigenvalue outside the unit circle and the
//! rest inside, so no product of at most `c < 2g` eigenvalues equals one.

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::Int;
use crate::linalg::{charpoly, dominance_root_test, kfold_value_at_one_is_nonzero, IntMatrix, IntPoly};
use crate::nilpotent::padding_word;

/// `A[0][g-1] = 1`, `A[i][i-1] = 1` for `i >= 1`, `A[g-1][g-1] = m`.
pub fn matrix_a(g: usize, m: &BigInt) -> IntMatrix {
    let mut a = IntMatrix::zeros(g, g);
    a.set(0, g - 1, BigInt::one());
    for i in 1..g {
        a.set(i, i - 1, BigInt::one());
    }
    a.set(g - 1, g - 1, a.get(g - 1, g - 1) + m);
    a
}

/// `L[i][i-1] = 1` for `i >= 1` and every entry of the last column `-1`.
pub fn matrix_l(g: usize) -> IntMatrix {
    let mut l = IntMatrix::zeros(g, g);
    for i in 1..g {
        l.set(i, i - 1, BigInt::one());
    }
    for i in 0..g {
        l.set(i, g - 1, -BigInt::one());
    }
    l
}

/// `L A^(g-1)`.
pub fn nonorientable_matrix(g: usize, m: &BigInt) -> Result<IntMatrix> {
    if g < 2 {
        return Err(Error::InvalidArgument("witness needs g >= 2".into()));
    }
    matrix_l(g).checked_mul(&matrix_a(g, m).pow(g as u32 - 1)?)
}

/// `(1 + x)(x - 1)^(g-1) + sum_{k=1}^{g-1} (m x)^k (x - 1)^(g-1-k)`.
pub fn nonorientable_charpoly_formula(g: usize, m: &BigInt) -> IntPoly {
    let x_minus_1 = IntPoly::from_i64(&[-1, 1]);
    let mut p = &IntPoly::from_i64(&[1, 1]) * &x_minus_1.pow(g as u32 - 1);
    for k in 1..g {
        let mx = IntPoly::monomial(m.pow(k as u32), k);
        p = &p + &(&mx * &x_minus_1.pow((g - 1 - k) as u32));
    }
    p
}

/// A witness matrix together with the checks that certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonorientableWitness {
    pub g: usize,
    pub class: usize,
    /// `m = (k f)^class` with `f = f(2, class)` from the padding identity.
    pub k: u64,
    pub f: Int,
    pub m: Int,
    pub matrix: IntMatrix,
    pub charpoly: Vec<Int>,
    pub det: Int,
    pub dominance: bool,
    /// `kfold_checks[i - 1]` records that no `i`-fold eigenvalue product is 1.
    pub kfold_checks: Vec<bool>,
}

impl NonorientableWitness {
    pub fn is_certified(&self) -> bool {
        self.det.0 == -BigInt::one() && self.dominance && self.kfold_checks.iter().all(|&b| b)
    }

    /// Recomputes every derived field from `g`, `class` and `m`.
    pub fn reverify(&self) -> Result<()> {
        let w = nonorientable_matrix(self.g, &self.m.0)?;
        if w != self.matrix {
            return Err(Error::Verification("witness matrix does not match L A^(g-1)".into()));
        }
        let fresh = evaluate(self.g, self.class, self.k, &self.f.0, &self.m.0)?;
        if &fresh != self {
            return Err(Error::Verification("witness checks do not reproduce".into()));
        }
        if !fresh.is_certified() {
            return Err(Error::Verification("witness fails its certificate".into()));
        }
        Ok(())
    }
}

fn evaluate(g: usize, class: usize, k: u64, f: &BigInt, m: &BigInt) -> Result<NonorientableWitness> {
    let w = nonorientable_matrix(g, m)?;
    let p = charpoly(&w)?;
    let det = w.det()?;
    let dominance = dominance_root_test(&p);
    let mut kfold_checks = Vec::with_capacity(class);
    if dominance {
        for i in 1..=class {
            kfold_checks.push(kfold_value_at_one_is_nonzero(&p, i)?);
        }
    }
    Ok(NonorientableWitness {
        g,
        class,
        k,
        f: Int(f.clone()),
        m: Int(m.clone()),
        matrix: w,
        charpoly: crate::json::ints(p.coeffs()),
        det: Int(det),
        dominance,
        kfold_checks,
    })
}

/// Smallest `m = (k f(2, c))^c`, `k = 1, 2, ...`, for which `W = L A^(g-1)`
/// passes the dominance test and has no `i`-fold eigenvalue product equal
/// to one for `i <= c`.
pub fn nonorientable_witness(g: usize, c: usize, max_m: Option<&BigInt>) -> Result<NonorientableWitness> {
    if g < 2 {
        return Err(Error::InvalidArgument("non-orientable witness needs g >= 2".into()));
    }
    if c == 0 || c >= 2 * g {
        return Err(Error::InvalidArgument(format!("class must satisfy 1 <= c < 2g = {}", 2 * g)));
    }
    let f = padding_word(2, c)?.f;
    for k in 1u64.. {
        let m = (BigInt::from(k) * &f).pow(c as u32);
        if let Some(cap) = max_m {
            if &m > cap {
                return Err(Error::ResourceLimit(format!("witness search passed the cap m <= {cap}")));
            }
        }
        let w = evaluate(g, c, k, &f, &m)?;
        if w.is_certified() {
            return Ok(w);
        }
    }
    unreachable!("search is unbounded without a cap")
}

/// `|a_{n-1}|` margin used by the dominance test, exposed for reports.
pub fn dominance_margin(p: &IntPoly) -> Option<BigInt> {
    let n = p.degree()?;
    if n < 2 {
        return None;
    }
    let rest: BigInt = p.coeffs()[..n - 1].iter().map(Signed::abs).sum();
    Some(p.coeff(n - 1).abs() - rest - BigInt::one())
}

/// True when `det = +-1`, so the `2g`-fold product of all eigenvalues each
/// taken twice is `det^2 = 1`.
pub fn product_criterion(det: &BigInt) -> bool {
    det.abs().is_one()
}

/// Largest `g^(2g)` for which [`product_spectrum_at_one`] computes exactly.
pub const EXPLICIT_PRODUCT_DEGREE: usize = 256;

/// Exact value of the `2g`-fold product spectrum at one when its degree
/// `g^(2g)` is at most [`EXPLICIT_PRODUCT_DEGREE`]; `None` otherwise.
pub fn product_spectrum_at_one(p: &IntPoly, g: usize) -> Result<Option<BigInt>> {
    let big_n = g.checked_pow(2 * g as u32).unwrap_or(usize::MAX);
    if big_n > EXPLICIT_PRODUCT_DEGREE {
        return Ok(None);
    }
    let q = crate::linalg::kfold_product_spectrum(p, 2 * g)?;
    Ok(Some(q.eval(&BigInt::one())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{kfold_product_spectrum, resultant};
    use num_traits::Zero;

    #[test]
    fn charpoly_matches_formula() {
        for g in 2..=4 {
            for m in [1i64, 3, 8, 64] {
                let m = BigInt::from(m);
                let w = nonorientable_matrix(g, &m).unwrap();
                assert_eq!(charpoly(&w).unwrap(), nonorientable_charpoly_formula(g, &m), "g={g} m={m}");
                assert_eq!(w.det().unwrap(), BigInt::from(-1));
            }
        }
    }

    #[test]
    fn genus_three_witness() {
        let w = nonorientable_witness(2, 3, None).unwrap();
        assert!(w.is_certified());
        assert_eq!(w.kfold_checks.len(), 3);
        w.reverify().unwrap();
        // independent check: Res(P_i, x - 1) != 0 for i <= 3
        let p = IntPoly::new(crate::json::bigints(w.charpoly.clone()));
        for i in 1..=3 {
            let q = kfold_product_spectrum(&p, i).unwrap();
            assert!(!resultant(&q, &IntPoly::from_i64(&[-1, 1])).unwrap().is_zero());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = nonorientable_witness(2, 3, Some(&BigInt::from(2))).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit(_)));
    }

    #[test]
    fn determinant_squared_kills_full_product() {
        let m = BigInt::from(27);
        let p = charpoly(&nonorientable_matrix(2, &m).unwrap()).unwrap();
        assert_eq!(product_spectrum_at_one(&p, 2).unwrap(), Some(BigInt::zero()));
    }
}
