//! Exact operations on root multisets: products of spectra, resultants and
//! coefficient tests that locate or pair up roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{IntMatrix, IntPoly};
use crate::error::{Error, Result};

/// Outcome of a coefficientwise symmetry test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    HoldsPlus,
    HoldsMinus,
    Fails,
}

/// `(lc^(n-1)) * p(x / lc)`: monic, with every root multiplied by `lc`.
fn monic_scaled(p: &IntPoly) -> IntPoly {
    let n = p.degree().expect("nonzero");
    let lc = p.leading().unwrap();
    let mut c = Vec::with_capacity(n + 1);
    for k in 0..n {
        c.push(p.coeff(k) * lc.pow((n - 1 - k) as u32));
    }
    c.push(BigInt::one());
    IntPoly::new(c)
}

/// Power sums `s_1..=s_count` of the roots of a monic polynomial.
pub fn power_sums(p: &IntPoly, count: usize) -> Vec<BigInt> {
    assert!(p.is_monic(), "power sums need a monic polynomial");
    let n = p.degree().unwrap();
    // e-coefficients in the form x^n + c_{n-1} x^{n-1} + ... ; c(i) = coeff of x^{n-i}
    let c = |i: usize| -> BigInt {
        if i > n {
            BigInt::zero()
        } else {
            p.coeff(n - i)
        }
    };
    let mut s: Vec<BigInt> = Vec::with_capacity(count + 1);
    s.push(BigInt::from(n));
    for k in 1..=count {
        let mut acc = BigInt::from(k) * c(k);
        for i in 1..k.min(n + 1) {
            let ci = c(i);
            if !ci.is_zero() {
                acc += ci * &s[k - i];
            }
        }
        s.push(-acc);
    }
    s.remove(0);
    s
}

/// Monic polynomial of degree `n` with power sums `s_1..=s_n`.
///
/// Fails if an intermediate Newton division is inexact, which only happens
/// when the sums do not come from algebraic integers.
pub fn from_power_sums(s: &[BigInt], n: usize) -> Result<IntPoly> {
    // e_0 = 1, k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} s_i
    let mut e: Vec<BigInt> = vec![BigInt::one()];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let t = &e[k - i] * &s[i - 1];
            if i % 2 == 1 {
                acc += t;
            } else {
                acc -= t;
            }
        }
        let (q, r) = acc.div_rem(&BigInt::from(k));
        if !r.is_zero() {
            return Err(Error::NotIntegral(format!("Newton step {k}")));
        }
        e.push(q);
    }
    // x^n - e_1 x^{n-1} + e_2 x^{n-2} - ...
    let mut c = vec![BigInt::zero(); n + 1];
    for (k, ek) in e.into_iter().enumerate() {
        c[n - k] = if k % 2 == 0 { ek } else { -ek };
    }
    Ok(IntPoly::new(c))
}

/// Integer polynomial whose roots are the products `a * b` over roots `a` of
/// `p` and `b` of `q`, with multiplicity; leading coefficient
/// `lc(p)^deg(q) * lc(q)^deg(p)`.
pub fn product_spectrum(p: &IntPoly, q: &IntPoly) -> Result<IntPoly> {
    let (n, m) = match (p.degree(), q.degree()) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(Error::ZeroPolynomial),
    };
    let (a, b) = (p.leading().unwrap().clone(), q.leading().unwrap().clone());
    let big_n = n * m;
    let scale = a.pow(m as u32) * b.pow(n as u32);
    if big_n == 0 {
        return Ok(IntPoly::constant(scale));
    }
    let (pm, qm) = (monic_scaled(p), monic_scaled(q));
    let (sp, sq) = (power_sums(&pm, big_n), power_sums(&qm, big_n));
    let s: Vec<BigInt> = sp.iter().zip(&sq).map(|(x, y)| x * y).collect();
    // roots of `scaled` are (a alpha)(b beta) = ab * alpha beta
    let scaled = from_power_sums(&s, big_n)?;
    let ab = &a * &b;
    if ab.is_one() {
        return Ok(scaled);
    }
    // scale * prod (x - alpha beta): coefficient k is scale * (ab)^(k - N) * scaled_k
    let mut out = Vec::with_capacity(big_n + 1);
    for k in 0..=big_n {
        let num = &scale * scaled.coeff(k);
        let den = ab.pow((big_n - k) as u32);
        let (qv, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NotIntegral("product spectrum rescaling".into()));
        }
        out.push(qv);
    }
    Ok(IntPoly::new(out))
}

/// Polynomial whose roots are all products over ordered `i`-tuples of roots of `p`.
pub fn kfold_product_spectrum(p: &IntPoly, i: usize) -> Result<IntPoly> {
    if i == 0 {
        return Err(Error::InvalidArgument("fold count must be at least 1".into()));
    }
    let n = p.degree().ok_or(Error::ZeroPolynomial)?;
    if i == 1 {
        return Ok(p.clone());
    }
    if p.is_monic() {
        let big_n = n
            .checked_pow(i as u32)
            .ok_or_else(|| Error::ResourceLimit("product spectrum degree overflows".into()))?;
        let s: Vec<BigInt> = power_sums(p, big_n).into_iter().map(|x| x.pow(i as u32)).collect();
        return from_power_sums(&s, big_n);
    }
    let mut acc = p.clone();
    for _ in 1..i {
        acc = product_spectrum(&acc, p)?;
    }
    Ok(acc)
}

/// Degree of the `i`-fold product spectrum above which
/// [`kfold_value_at_one_is_nonzero`] switches to modular evaluation.
pub const EXACT_KFOLD_DEGREE: usize = 64;

/// Decides `kfold_product_spectrum(p, i)(1) != 0` for monic `p`.
///
/// Small cases are computed exactly. Large cases evaluate the product
/// spectrum modulo 62-bit primes: a nonzero residue proves the integer value
/// is nonzero. Only if every prime gives zero does the exact computation run.
pub fn kfold_value_at_one_is_nonzero(p: &IntPoly, i: usize) -> Result<bool> {
    if !p.is_monic() {
        return Ok(!kfold_product_spectrum(p, i)?.eval(&BigInt::one()).is_zero());
    }
    let n = p.degree().unwrap();
    let big_n = n.checked_pow(i as u32).unwrap_or(usize::MAX);
    if big_n <= EXACT_KFOLD_DEGREE {
        return Ok(!kfold_product_spectrum(p, i)?.eval(&BigInt::one()).is_zero());
    }
    for prime in large_primes(4) {
        if modular::kfold_value_at_one(p, i, big_n, prime) != 0 {
            return Ok(true);
        }
    }
    Ok(!kfold_product_spectrum(p, i)?.eval(&BigInt::one()).is_zero())
}

fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c: u64 = (1 << 62) - 1;
    while out.len() < count {
        if modular::is_prime(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

mod modular {
    use num_bigint::BigInt;
    use num_traits::ToPrimitive;

    use super::IntPoly;

    fn mul(a: u64, b: u64, m: u64) -> u64 {
        ((a as u128 * b as u128) % m as u128) as u64
    }

    fn pow(mut a: u64, mut e: u64, m: u64) -> u64 {
        let mut r = 1 % m;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, m);
            }
            a = mul(a, a, m);
            e >>= 1;
        }
        r
    }

    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for &b in &BASES {
            if n.is_multiple_of(b) {
                return n == b;
            }
        }
        let (mut d, mut r) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            r += 1;
        }
        'outer: for &a in &BASES {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..r {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    fn reduce(v: &BigInt, m: u64) -> u64 {
        let r = v % BigInt::from(m);
        let r = if r < BigInt::from(0) { r + BigInt::from(m) } else { r };
        r.to_u64().expect("reduced residue")
    }

    /// `P_i(1) mod m` where `P_i` has power sums `s_k(p)^i`; needs `m > big_n`.
    pub fn kfold_value_at_one(p: &IntPoly, i: usize, big_n: usize, m: u64) -> u64 {
        assert!((big_n as u64) < m);
        let n = p.degree().unwrap();
        let c: Vec<u64> = (0..=n).map(|k| reduce(&p.coeff(n - k.min(n)), m)).collect();
        // c[k] = coefficient of x^{n-k}
        let sub = |a: u64, b: u64| if a >= b { a - b } else { a + (m - b) };
        let mut s = vec![0u64; big_n + 1];
        for k in 1..=big_n {
            let mut acc = if k <= n { mul(k as u64 % m, c[k], m) } else { 0 };
            for j in 1..k.min(n + 1) {
                acc = (acc + mul(c[j], s[k - j], m)) % m;
            }
            s[k] = sub(0, acc);
        }
        let s: Vec<u64> = s.iter().map(|&x| pow(x, i as u64, m)).collect();
        // Newton: k e_k = sum (-1)^(j-1) e_{k-j} s_j
        let mut e = vec![0u64; big_n + 1];
        e[0] = 1;
        for k in 1..=big_n {
            let mut acc = 0u64;
            for j in 1..=k {
                let t = mul(e[k - j], s[j], m);
                acc = if j % 2 == 1 { (acc + t) % m } else { sub(acc, t) };
            }
            e[k] = mul(acc, pow(k as u64, m - 2, m), m);
        }
        // P(1) = sum_k (-1)^k e_k
        let mut v = 0u64;
        for (k, ek) in e.iter().enumerate() {
            v = if k % 2 == 0 { (v + ek) % m } else { sub(v, *ek) };
        }
        v
    }
}

/// Resultant `Res(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant(p: &IntPoly, q: &IntPoly) -> Result<BigInt> {
    let (n, m) = match (p.degree(), q.degree()) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(Error::ZeroPolynomial),
    };
    let size = n + m;
    if size == 0 {
        return Ok(BigInt::one());
    }
    let syl = IntMatrix::from_fn(size, size, |r, c| {
        if r < m {
            // row r holds p shifted by r, highest degree first
            c.checked_sub(r)
                .filter(|&k| k <= n)
                .map(|k| p.coeff(n - k))
                .unwrap_or_default()
        } else {
            let r = r - m;
            c.checked_sub(r)
                .filter(|&k| k <= m)
                .map(|k| q.coeff(m - k))
                .unwrap_or_default()
        }
    });
    syl.det()
}

/// Sufficient test for a monic `p` of degree `n >= 2` to have exactly one
/// root outside the closed unit disk and `n - 1` roots strictly inside:
/// `|a_{n-1}| > 1 + |a_{n-2}| + ... + |a_0|` (Rouché against `a_{n-1} x^{n-1}`).
/// With `|a_0| = 1` this is `|a_{n-1}| > |a_{n-2}| + ... + |a_1| + 2`.
pub fn dominance_root_test(p: &IntPoly) -> bool {
    let Some(n) = p.degree() else {
        return false;
    };
    if n < 2 || !p.is_monic() {
        return false;
    }
    let rest: BigInt = p.coeffs()[..n - 1].iter().map(Signed::abs).sum();
    p.coeff(n - 1).abs() > rest + 1
}

fn symmetry(p: &IntPoly, g: usize, twisted: bool) -> Result<Symmetry> {
    let n = 2 * g;
    if p.degree() != Some(n) {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: p.degree().map_or("none".into(), |d| d.to_string()),
        });
    }
    let sign = |k: usize| twisted && k % 2 == 1;
    let holds = |eps: bool| {
        (0..=n).all(|k| {
            let mirrored = p.coeff(n - k);
            let flip = sign(k) ^ eps;
            p.coeff(k) == if flip { -mirrored } else { mirrored }
        })
    };
    Ok(if holds(false) {
        Symmetry::HoldsPlus
    } else if holds(true) {
        Symmetry::HoldsMinus
    } else {
        Symmetry::Fails
    })
}

/// Compares `p(x)` with `x^(2g) p(-1/x)` coefficientwise.
pub fn reciprocal_symmetry_check(p: &IntPoly, g: usize) -> Result<Symmetry> {
    symmetry(p, g, true)
}

/// Compares `p(x)` with `x^(2g) p(1/x)` coefficientwise (the self-reciprocal
/// pattern of characteristic polynomials of symplectic matrices).
pub fn palindromic_check(p: &IntPoly, g: usize) -> Result<Symmetry> {
    symmetry(p, g, false)
}
