//! Coefficient rings for Magnus series: exact rationals, and rational
//! polynomials when exponents are symbolic.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Send
    + Sync
{
    fn from_int(n: BigInt) -> Self;

    fn scale(&self, q: &BigRational) -> Self;

    fn from_rational(q: &BigRational) -> Self {
        Self::one().scale(q)
    }

    /// `x (x - 1) ... (x - j + 1) / j!`
    fn binomial(&self, j: usize) -> Self {
        let mut acc = Self::one();
        let mut fact = BigInt::one();
        for i in 0..j {
            acc = acc * (self.clone() - Self::from_int(BigInt::from(i)));
            fact *= BigInt::from(i + 1);
        }
        acc.scale(&BigRational::new(BigInt::one(), fact))
    }
}

impl Scalar for BigRational {
    fn from_int(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

/// `sum_p coeffs[p] * values[p]`, with rational weights.
pub fn rational_combination<S: Scalar>(coeffs: &[BigRational], values: &[S]) -> S {
    let mut acc = S::zero();
    for (c, v) in coeffs.iter().zip(values) {
        if !c.is_zero() && !v.is_zero() {
            acc = acc + v.scale(c);
        }
    }
    acc
}

pub fn integral(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn binomials_of_rationals() {
        assert_eq!(q(5, 1).binomial(2), q(10, 1));
        assert_eq!(q(-1, 1).binomial(3), q(-1, 1));
        assert_eq!(q(1, 2).binomial(2), q(-1, 8));
        assert_eq!(q(7, 1).binomial(0), q(1, 1));
    }
}
