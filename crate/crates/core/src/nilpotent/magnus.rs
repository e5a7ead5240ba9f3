//! Truncated free associative algebra `Z<X_1..X_r> / (degree > c)` with
//! coefficients in any [`Scalar`]; the free nilpotent group embeds into its
//! units through `a_i -> 1 + X_i`.

use num_traits::Zero;

use super::scalar::Scalar;

/// Indexing of the monomials `X_{i1} ... X_{id}`, `d <= c`, degree by
/// degree, first letter most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub rank: usize,
    pub class: usize,
    /// `offsets[d]` is the index of the first degree-`d` monomial.
    offsets: Vec<usize>,
    /// `powers[d] = rank^d`
    powers: Vec<usize>,
}

impl Layout {
    pub fn new(rank: usize, class: usize) -> Self {
        let powers: Vec<usize> = (0..=class).map(|d| rank.pow(d as u32)).collect();
        let mut offsets = Vec::with_capacity(class + 2);
        let mut acc = 0;
        for p in &powers {
            offsets.push(acc);
            acc += p;
        }
        offsets.push(acc);
        Layout {
            rank,
            class,
            offsets,
            powers,
        }
    }

    pub fn len(&self) -> usize {
        self.offsets[self.class + 1]
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn block(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d]..self.offsets[d + 1]
    }

    pub fn block_len(&self, d: usize) -> usize {
        self.powers[d]
    }

    pub fn generator(&self, i: usize) -> usize {
        self.offsets[1] + i
    }
}

/// Element of the truncated algebra, dense over [`Layout`] monomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    pub fn zero(layout: &Layout) -> Self {
        Series {
            coeffs: vec![S::zero(); layout.len()],
        }
    }

    pub fn one(layout: &Layout) -> Self {
        let mut s = Self::zero(layout);
        s.coeffs[0] = S::one();
        s
    }

    pub fn generator(layout: &Layout, i: usize) -> Self {
        let mut s = Self::zero(layout);
        s.coeffs[layout.generator(i)] = S::one();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        Series {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
        }
    }

    /// Truncated product.
    pub fn mul(&self, other: &Self, layout: &Layout) -> Self {
        let mut out = Self::zero(layout);
        for da in 0..=layout.class {
            let ra = layout.block(da);
            if self.coeffs[ra.clone()].iter().all(Zero::is_zero) {
                continue;
            }
            for db in 0..=layout.class - da {
                let rb = layout.block(db);
                let base = layout.offsets[da + db];
                let width = layout.block_len(db);
                for (i, a) in self.coeffs[ra.clone()].iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in other.coeffs[rb.clone()].iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        let slot = &mut out.coeffs[base + i * width + j];
                        *slot = slot.clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Degree-`d` component.
    pub fn component(&self, layout: &Layout, d: usize) -> &[S] {
        &self.coeffs[layout.block(d)]
    }

    /// `self - 1` has no constant term: `(1 + Y)^x = sum_j binom(x, j) Y^j`.
    pub fn unipotent_power(&self, x: &S, layout: &Layout) -> Self {
        let mut y = self.clone();
        y.coeffs[0] = y.coeffs[0].clone() - S::one();
        debug_assert!(y.coeffs[0].is_zero(), "not unipotent");
        let mut out = Self::one(layout);
        let mut yj = Self::one(layout);
        for j in 1..=layout.class {
            yj = yj.mul(&y, layout);
            if yj.coeffs.iter().all(Zero::is_zero) {
                break;
            }
            out = out.add(&yj.scale(&x.binomial(j)));
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Series<T> {
        Series {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Powers `Y^0, Y^1, ...` of a series without constant term, stopping at
/// the first zero power. Used to raise fixed unipotent elements quickly.
pub fn nilpotent_powers<S: Scalar>(y: &Series<S>, layout: &Layout) -> Vec<Series<S>> {
    let mut out = vec![Series::one(layout)];
    loop {
        let next = out.last().unwrap().mul(y, layout);
        if next.coeffs.iter().all(Zero::is_zero) {
            return out;
        }
        out.push(next);
    }
}

/// `sum_j binom(x, j) Y^j` from precomputed powers of `Y`.
pub fn power_from_powers<S: Scalar>(powers: &[Series<S>], x: &S, layout: &Layout) -> Series<S> {
    let mut out = Series::one(layout);
    for (j, yj) in powers.iter().enumerate().skip(1) {
        let b = x.binomial(j);
        if !b.is_zero() {
            out = out.add(&yj.scale(&b));
        }
    }
    out
}

pub fn is_one<S: Scalar>(s: &Series<S>) -> bool {
    s.coeffs[0].is_one() && s.coeffs[1..].iter().all(Zero::is_zero)
}
