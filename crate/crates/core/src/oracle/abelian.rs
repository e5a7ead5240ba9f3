//! Reidemeister counts of endomorphisms of `Z^n` and of `(Z/m)^n`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::Int;
use crate::linalg::{smith_normal_form, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReidemeisterCount {
    Finite(Int),
    Infinite,
}

impl ReidemeisterCount {
    pub fn finite(&self) -> Option<&BigInt> {
        match self {
            ReidemeisterCount::Finite(n) => Some(&n.0),
            ReidemeisterCount::Infinite => None,
        }
    }
}

/// `R(M)` on `Z^n`: `|det(I - M)|`, or infinite when that vanishes. The
/// value is cross-checked against the order of `coker(I - M)` from Smith
/// normal form.
pub fn abelian_reidemeister_count(m: &IntMatrix) -> Result<ReidemeisterCount> {
    let a = m.identity_minus()?;
    let det = a.det()?;
    let coker = smith_normal_form(&a)?.cokernel_order();
    match (det.is_zero(), coker) {
        (true, None) => Ok(ReidemeisterCount::Infinite),
        (false, Some(c)) if c == det.abs() => Ok(ReidemeisterCount::Finite(Int(c))),
        (_, c) => Err(Error::Verification(format!(
            "det(I - M) = {det} disagrees with cokernel order {c:?}"
        ))),
    }
}

/// Twisted classes of `M mod m` on `(Z/m)^n`: the order of
/// `(Z/m)^n / (I - M)(Z/m)^n`, read off the Smith diagonal as
/// `prod gcd(d_i, m)` with `gcd(0, m) = m`.
pub fn abelian_count_mod(m: &IntMatrix, modulus: u64) -> Result<BigInt> {
    if modulus < 2 {
        return Err(Error::InvalidArgument("modulus must be at least 2".into()));
    }
    let a = m.identity_minus()?;
    let smith = smith_normal_form(&a)?;
    let md = BigInt::from(modulus);
    let mut diag = smith.diagonal();
    diag.resize(a.rows(), BigInt::zero());
    Ok(diag.iter().map(|d| d.gcd(&md)).product())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let fib = IntMatrix::from_i64_rows(&[[0, 1], [1, 1]]);
        assert_eq!(abelian_reidemeister_count(&fib).unwrap(), ReidemeisterCount::Finite(Int(BigInt::from(1))));
        assert_eq!(
            abelian_reidemeister_count(&IntMatrix::identity(3)).unwrap(),
            ReidemeisterCount::Infinite
        );
        let two = IntMatrix::from_i64_rows(&[[2]]);
        assert_eq!(abelian_reidemeister_count(&two).unwrap(), ReidemeisterCount::Finite(Int(BigInt::from(1))));
    }

    #[test]
    fn modular_counts() {
        assert_eq!(abelian_count_mod(&IntMatrix::identity(2), 5).unwrap(), BigInt::from(25));
        // I - M = diag(3, 0): gcd(3, 6) * 6
        let m = IntMatrix::from_i64_rows(&[[-2, 0], [0, 1]]);
        assert_eq!(abelian_count_mod(&m, 6).unwrap(), BigInt::from(18));
    }
}
