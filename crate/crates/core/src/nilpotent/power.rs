//! Power polynomials of free nilpotent groups and the padding identity
//! `x^n y^f = (x z)^n` with `z` in `<y, [G, G]>`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::group::{MalcevElement, NilpotentGroup};
use super::mpoly::MPoly;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use crate::lie::Shape;

type Q = BigRational;

/// Guard for the symbolic table: number of Malcev coordinates.
pub const MAX_SYMBOLIC_COORDS: usize = 14;

/// For `u = a_1^x_1 ... a_k^x_k`, coordinate `i` of `u^m` is
/// `m x_i + q_i(x_1, ..., x_{i-1}, m)`.
///
/// Polynomial variables are `x_1..x_k` (indices `0..k`) followed by `m`
/// (index `k`).
#[derive(Clone, Debug, PartialEq)]
pub struct PowerPolynomialTable {
    pub rank: usize,
    pub class: usize,
    pub q: Vec<MPoly>,
}

impl PowerPolynomialTable {
    pub fn m_var(&self) -> usize {
        self.q.len()
    }

    /// Coordinates of `u^m` read off the table.
    pub fn evaluate(&self, x: &[BigInt], m: &BigInt) -> Result<Vec<BigInt>> {
        if x.len() != self.q.len() {
            return Err(Error::DimensionMismatch(format!(
                "table has {} coordinates, got {}",
                self.q.len(),
                x.len()
            )));
        }
        let mut point: Vec<Q> = x.iter().cloned().map(Q::from_integer).collect();
        point.push(Q::from_integer(m.clone()));
        self.q
            .iter()
            .zip(x)
            .map(|(q, xi)| {
                let v = q.eval(&point) + Q::from_integer(m * xi);
                v.is_integer()
                    .then(|| v.to_integer())
                    .ok_or_else(|| Error::NotIntegral(format!("power coordinate {v}")))
            })
            .collect()
    }

    pub fn render(&self, i: usize) -> String {
        let k = self.q.len();
        self.q[i].render(&|v| if v == k { "m".into() } else { format!("x{}", v + 1) })
    }
}

/// Symbolic power table of `N(r, c)`.
pub fn build_power_table(r: usize, c: usize) -> Result<PowerPolynomialTable> {
    power_table_of(&NilpotentGroup::new(r, c)?)
}

pub fn power_table_of(group: &NilpotentGroup) -> Result<PowerPolynomialTable> {
    let k = group.hirsch_length();
    if k > MAX_SYMBOLIC_COORDS {
        return Err(Error::ResourceLimit(format!(
            "symbolic power table with {k} coordinates exceeds {MAX_SYMBOLIC_COORDS}"
        )));
    }
    let xs: Vec<MPoly> = (0..k).map(MPoly::var).collect();
    let m = MPoly::var(k);
    let s = group.series(&xs).unipotent_power(&m, group.layout());
    let coords = group.sift(s)?;
    let q = coords
        .into_iter()
        .zip(xs)
        .map(|(c, x)| c - m.clone() * x)
        .collect();
    Ok(PowerPolynomialTable {
        rank: group.rank(),
        class: group.class(),
        q,
    })
}

/// Solution of `a^n b^f = (a z)^n` in the free nilpotent group on `a, b`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PaddingWord {
    pub n: u32,
    pub class: usize,
    /// Smallest positive `f` from the denominator construction.
    #[serde(with = "bigint_string")]
    pub f: BigInt,
    /// Malcev coordinates of `z` in `N(2, class)` for this `f`.
    pub z: MalcevElement,
}

mod bigint_string {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::json::Int;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        Int(v.clone()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Ok(Int::deserialize(d)?.0)
    }
}

/// Solves for `z = b^(m/n) a_3^z_3 ... a_k^z_k` weight by weight with `m`
/// symbolic, then takes `f` as the lcm of all denominators so every
/// coordinate of `z` becomes an integer.
pub fn padding_word(n: u32, class: usize) -> Result<PaddingWord> {
    if n < 2 {
        return Err(Error::InvalidArgument("padding exponent n must be at least 2".into()));
    }
    let g = NilpotentGroup::new(2, class)?;
    let k = g.hirsch_length();
    let nq = Q::from_integer(BigInt::from(n));
    let m = MPoly::var(0);
    let mut z: Vec<MPoly> = vec![MPoly::zero(); k];
    if k > 1 {
        z[1] = m.scale(&(Q::one() / nq.clone()));
    }
    for d in 2..=class {
        let mut az = z.clone();
        az[0] = MPoly::one();
        let p = g
            .series(&az)
            .unipotent_power(&MPoly::from_int(BigInt::from(n)), g.layout());
        let coords = g.sift(p)?;
        for l in g.table().degree_range(d) {
            z[l] = -coords[l].scale(&(Q::one() / nq.clone()));
        }
    }
    let mut f = BigInt::one();
    for (l, zl) in z.iter().enumerate() {
        if !zl.coefficient(&[]).is_zero() {
            return Err(Error::Verification(format!("padding coordinate {l} has a constant term")));
        }
        f = f.lcm(&zl.denominator_lcm());
    }
    let point = [Q::from_integer(f.clone())];
    let coords = z
        .iter()
        .map(|zl| {
            let v = zl.eval(&point);
            v.is_integer()
                .then(|| v.to_integer())
                .ok_or_else(|| Error::NotIntegral(format!("padding coordinate {v}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let z = g.element(coords)?;
    let (a, b) = (g.generator(0), g.generator(1));
    let lhs = g.multiply(&g.power(&a, &BigInt::from(n))?, &g.power(&b, &f)?)?;
    let rhs = g.power(&g.multiply(&a, &z)?, &BigInt::from(n))?;
    if lhs != rhs {
        return Err(Error::Verification("padding identity fails in N(2, c)".into()));
    }
    Ok(PaddingWord { n, class, f, z })
}

/// Evaluates an element of `N(2, c)` at `a -> x`, `b -> y` inside `group`.
pub fn substitute(
    group: &NilpotentGroup,
    word_group: &NilpotentGroup,
    w: &MalcevElement,
    x: &MalcevElement,
    y: &MalcevElement,
) -> Result<MalcevElement> {
    let t = word_group.table();
    let mut images: Vec<MalcevElement> = Vec::with_capacity(t.total_dim());
    for l in 0..t.total_dim() {
        let img = match t.word(l).shape {
            Shape::Generator(0) => x.clone(),
            Shape::Generator(_) => y.clone(),
            Shape::Bracket(u, v) => group.commutator(&images[u], &images[v])?,
        };
        images.push(img);
    }
    let factors = w
        .coords
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .map(|(l, e)| group.power(&images[l], e))
        .collect::<Result<Vec<_>>>()?;
    group.multiply_all(&factors)
}

/// `(f, z)` with `x^n y^f = (x z)^n` and `z` in `<y, [G, G]>`; the identity
/// is re-verified in `group` before returning.
pub fn power_padding(
    group: &NilpotentGroup,
    n: u32,
    x: &MalcevElement,
    y: &MalcevElement,
) -> Result<(BigInt, MalcevElement)> {
    let word = padding_word(n, group.class())?;
    let word_group = NilpotentGroup::new(2, group.class())?;
    let z = substitute(group, &word_group, &word.z, x, y)?;
    let lhs = group.multiply(&group.power(x, &BigInt::from(n))?, &group.power(y, &word.f)?)?;
    let rhs = group.power(&group.multiply(x, &z)?, &BigInt::from(n))?;
    if lhs != rhs {
        return Err(Error::Verification("padding identity fails".into()));
    }
    Ok((word.f, z))
}

/// Abelianization check for `z` in `<y, [G, G]>` as produced by the padding
/// construction: `n * ab(z) = f * ab(y)`.
pub fn padding_in_subgroup(
    group: &NilpotentGroup,
    n: u32,
    f: &BigInt,
    y: &MalcevElement,
    z: &MalcevElement,
) -> bool {
    let r = group.rank();
    (0..r).all(|i| BigInt::from(n) * &z.coords[i] == f * &y.coords[i])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn n22_table() {
        let g = NilpotentGroup::new(2, 2).unwrap();
        let t = build_power_table(2, 2).unwrap();
        assert!(t.q[0].is_zero());
        assert!(t.q[1].is_zero());
        // q_3 = binom(m, 2) x1 x2
        assert_eq!(t.render(2), "1/2*x1*x2*m^2 - 1/2*x1*x2*m");
        let u = g.element_i64(&[3, -2, 7]).unwrap();
        for m in [-3i64, 0, 1, 2, 5] {
            let direct = g.power(&u, &big(m)).unwrap();
            assert_eq!(t.evaluate(&u.coords, &big(m)).unwrap(), direct.coords);
        }
    }

    #[test]
    fn n22_padding() {
        let w = padding_word(2, 2).unwrap();
        assert_eq!(w.f, big(4));
        assert_eq!(w.z.coords, vec![big(0), big(2), big(-1)]);
    }

    #[test]
    fn trivial_y() {
        let g = NilpotentGroup::new(2, 3).unwrap();
        let x = g.element_i64(&[1, 2, 0, 1, 0]).unwrap();
        let (_, z) = power_padding(&g, 3, &x, &g.identity()).unwrap();
        assert!(z.is_identity());
    }
}
