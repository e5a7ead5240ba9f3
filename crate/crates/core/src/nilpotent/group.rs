//! Free nilpotent groups `N(r, c)` in Malcev coordinates.
//!
//! The polycyclic sequence is the Hall basis of the free Lie ring: degree
//! one words are the generators, and a word `[u, v]` stands for the group
//! commutator `[a_u, a_v] = a_u^-1 a_v^-1 a_u a_v`. An element is
//! `a_1^e_1 a_2^e_2 ... a_k^e_k` in basis order. Arithmetic goes through the
//! Magnus embedding and is read back by sifting one degree at a time.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::magnus::{is_one, nilpotent_powers, power_from_powers, Layout, Series};
use super::scalar::{integral, rational_combination, Scalar};
use crate::error::{Error, Result};
use crate::json::Int;
use crate::lie::{HallOrder, Shape, StructureTable};
use crate::linalg::{smith_normal_form, IntMatrix};

type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MalcevElement {
    pub rank: usize,
    pub class: usize,
    pub coords: Vec<BigInt>,
}

impl MalcevElement {
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Debug for MalcevElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coords.iter().map(|x| x.to_string()).collect();
        write!(f, "N({},{})[{}]", self.rank, self.class, c.join(","))
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    rank: usize,
    class: usize,
    coords: Vec<Int>,
}

impl Serialize for MalcevElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            rank: self.rank,
            class: self.class,
            coords: crate::json::ints(&self.coords),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MalcevElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElementRepr::deserialize(d)?;
        Ok(MalcevElement {
            rank: r.rank,
            class: r.class,
            coords: crate::json::bigints(r.coords),
        })
    }
}

/// Per-degree data for reading Lie components back as Hall coordinates.
#[derive(Clone, Debug)]
struct Sifter {
    /// Monomial positions (inside the degree block) that determine the
    /// coordinates.
    pivots: Vec<usize>,
    /// Inverse of the Hall expansion restricted to the pivot rows.
    inverse: Vec<Vec<Q>>,
}

#[derive(Clone, Debug)]
pub struct NilpotentGroup {
    table: StructureTable,
    layout: Layout,
    /// Associative expansion of each Hall word, restricted to its degree.
    lie: Vec<Vec<Q>>,
    /// Powers of `a_l - 1` for every basis element `a_l`.
    basis_powers: Vec<Vec<Series<Q>>>,
    sifters: Vec<Sifter>,
}

/// Row-reduces over `Q` to pick `dim` rows of `rows` that are independent,
/// then inverts that square block.
fn choose_sifter(rows: &[Vec<Q>], dim: usize) -> Result<Sifter> {
    let mut echelon: Vec<(usize, Vec<Q>)> = Vec::new();
    let mut pivots = Vec::new();
    for (p, row) in rows.iter().enumerate() {
        if pivots.len() == dim {
            break;
        }
        let mut v = row.clone();
        for (col, e) in &echelon {
            if !v[*col].is_zero() {
                let f = v[*col].clone() / e[*col].clone();
                for (x, y) in v.iter_mut().zip(e) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(col) = v.iter().position(|x| !x.is_zero()) {
            echelon.push((col, v));
            pivots.push(p);
        }
    }
    if pivots.len() != dim {
        return Err(Error::Verification("Hall expansions are not independent".into()));
    }
    // Gauss-Jordan on [B | I]
    let mut a: Vec<Vec<Q>> = pivots
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let mut r = rows[p].clone();
            r.extend((0..dim).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..dim {
        let piv = (col..dim).find(|&i| !a[i][col].is_zero()).expect("invertible");
        a.swap(col, piv);
        let inv = Q::one() / a[col][col].clone();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != col && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    let inverse = a.into_iter().map(|r| r[dim..].to_vec()).collect();
    Ok(Sifter { pivots, inverse })
}

impl NilpotentGroup {
    pub fn new(rank: usize, class: usize) -> Result<Self> {
        if rank == 0 || class == 0 {
            return Err(Error::InvalidArgument("rank and class must be positive".into()));
        }
        let table = StructureTable::build(rank, class, HallOrder::Standard, 1_000_000)?;
        let layout = Layout::new(rank, class);
        let k = table.total_dim();
        let mut lie_series: Vec<Series<Q>> = Vec::with_capacity(k);
        let mut elems: Vec<Series<Q>> = Vec::with_capacity(k);
        for l in 0..k {
            let (ls, el) = match table.word(l).shape {
                Shape::Generator(i) => {
                    let x = Series::generator(&layout, i);
                    let e = Series::one(&layout).add(&x);
                    (x, e)
                }
                Shape::Bracket(u, v) => {
                    let (lu, lv) = (&lie_series[u], &lie_series[v]);
                    let ls = lu.mul(lv, &layout).sub(&lv.mul(lu, &layout));
                    let (eu, ev) = (&elems[u], &elems[v]);
                    let m1 = Q::from_integer(BigInt::from(-1));
                    let e = eu
                        .unipotent_power(&m1, &layout)
                        .mul(&ev.unipotent_power(&m1, &layout), &layout)
                        .mul(eu, &layout)
                        .mul(ev, &layout);
                    (ls, e)
                }
            };
            lie_series.push(ls);
            elems.push(el);
        }
        let lie: Vec<Vec<Q>> = (0..k)
            .map(|l| lie_series[l].component(&layout, table.word(l).degree).to_vec())
            .collect();
        let basis_powers = elems
            .iter()
            .map(|e| nilpotent_powers(&e.sub(&Series::one(&layout)), &layout))
            .collect();
        let mut sifters = Vec::with_capacity(class);
        for d in 1..=class {
            let words: Vec<usize> = table.degree_range(d).collect();
            let rows: Vec<Vec<Q>> = (0..layout.block_len(d))
                .map(|p| words.iter().map(|&l| lie[l][p].clone()).collect())
                .collect();
            sifters.push(choose_sifter(&rows, words.len())?);
        }
        Ok(NilpotentGroup {
            table,
            layout,
            lie,
            basis_powers,
            sifters,
        })
    }

    pub fn rank(&self) -> usize {
        self.table.rank()
    }

    pub fn class(&self) -> usize {
        self.table.class()
    }

    /// Hirsch length: number of Malcev coordinates.
    pub fn hirsch_length(&self) -> usize {
        self.table.total_dim()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn layout(&self) -> &Layout {
        &self.layout
    }

    pub fn identity(&self) -> MalcevElement {
        self.element(vec![BigInt::zero(); self.hirsch_length()])
            .expect("right length")
    }

    pub fn generator(&self, i: usize) -> MalcevElement {
        let mut c = vec![BigInt::zero(); self.hirsch_length()];
        c[i] = BigInt::one();
        self.element(c).expect("right length")
    }

    /// The `l`-th polycyclic generator (Hall word `l`).
    pub fn basis_element(&self, l: usize) -> MalcevElement {
        self.generator(l)
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<MalcevElement> {
        if coords.len() != self.hirsch_length() {
            return Err(Error::DimensionMismatch(format!(
                "N({},{}) has {} coordinates, got {}",
                self.rank(),
                self.class(),
                self.hirsch_length(),
                coords.len()
            )));
        }
        Ok(MalcevElement {
            rank: self.rank(),
            class: self.class(),
            coords,
        })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<MalcevElement> {
        self.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    fn check(&self, u: &MalcevElement) -> Result<()> {
        if u.rank != self.rank() || u.class != self.class() || u.coords.len() != self.hirsch_length() {
            return Err(Error::AmbientMismatch(u.rank, u.class, self.rank(), self.class()));
        }
        Ok(())
    }

    /// `a_l^x` in the Magnus algebra.
    pub fn basis_power<S: Scalar>(&self, l: usize, x: &S) -> Series<S> {
        let powers: Vec<Series<S>> = self.basis_powers[l]
            .iter()
            .map(|s| s.map(S::from_rational))
            .collect();
        power_from_powers(&powers, x, &self.layout)
    }

    /// Magnus image of `a_1^x_1 ... a_k^x_k`.
    pub fn series<S: Scalar>(&self, coords: &[S]) -> Series<S> {
        let mut acc = Series::one(&self.layout);
        for (l, x) in coords.iter().enumerate() {
            if !x.is_zero() {
                acc = acc.mul(&self.basis_power(l, x), &self.layout);
            }
        }
        acc
    }

    /// Malcev coordinates of a group-like series.
    pub fn sift<S: Scalar>(&self, mut g: Series<S>) -> Result<Vec<S>> {
        let mut coords = vec![S::zero(); self.hirsch_length()];
        for d in 1..=self.class() {
            let sifter = &self.sifters[d - 1];
            let words: Vec<usize> = self.table.degree_range(d).collect();
            let comp = g.component(&self.layout, d).to_vec();
            let vals: Vec<S> = sifter.pivots.iter().map(|&p| comp[p].clone()).collect();
            let e: Vec<S> = sifter
                .inverse
                .iter()
                .map(|row| rational_combination(row, &vals))
                .collect();
            for (p, c) in comp.iter().enumerate() {
                let weights: Vec<Q> = words.iter().map(|&l| self.lie[l][p].clone()).collect();
                if rational_combination(&weights, &e) != *c {
                    return Err(Error::Verification(format!(
                        "degree {d} component is not a Lie element"
                    )));
                }
            }
            for (&l, x) in words.iter().zip(&e) {
                if !x.is_zero() {
                    g = self.basis_power(l, &-x.clone()).mul(&g, &self.layout);
                }
                coords[l] = x.clone();
            }
        }
        if !is_one(&g) {
            return Err(Error::Verification("series is not in the group".into()));
        }
        Ok(coords)
    }

    fn to_element(&self, coords: Vec<Q>) -> Result<MalcevElement> {
        let ints = coords
            .iter()
            .map(|q| integral(q).ok_or_else(|| Error::NotIntegral(format!("coordinate {q}"))))
            .collect::<Result<Vec<_>>>()?;
        self.element(ints)
    }

    fn rational(u: &MalcevElement) -> Vec<Q> {
        u.coords.iter().cloned().map(Q::from_integer).collect()
    }

    pub fn multiply(&self, u: &MalcevElement, v: &MalcevElement) -> Result<MalcevElement> {
        self.check(u)?;
        self.check(v)?;
        let s = self
            .series(&Self::rational(u))
            .mul(&self.series(&Self::rational(v)), &self.layout);
        self.to_element(self.sift(s)?)
    }

    pub fn multiply_all<'a>(&self, items: impl IntoIterator<Item = &'a MalcevElement>) -> Result<MalcevElement> {
        let mut s = Series::<Q>::one(&self.layout);
        for u in items {
            self.check(u)?;
            s = s.mul(&self.series(&Self::rational(u)), &self.layout);
        }
        self.to_element(self.sift(s)?)
    }

    pub fn inverse(&self, u: &MalcevElement) -> Result<MalcevElement> {
        self.power(u, &BigInt::from(-1))
    }

    pub fn power(&self, u: &MalcevElement, n: &BigInt) -> Result<MalcevElement> {
        self.check(u)?;
        self.to_element(self.power_rational(&Self::rational(u), &Q::from_integer(n.clone()))?)
    }

    /// Power of an element with rational coordinates (Malcev completion).
    pub fn power_rational(&self, coords: &[Q], n: &Q) -> Result<Vec<Q>> {
        let s = self.series(coords).unipotent_power(n, &self.layout);
        self.sift(s)
    }

    /// `[u, v] = u^-1 v^-1 u v`
    pub fn commutator(&self, u: &MalcevElement, v: &MalcevElement) -> Result<MalcevElement> {
        let ui = self.inverse(u)?;
        let vi = self.inverse(v)?;
        self.multiply_all([&ui, &vi, u, v])
    }

    /// `v` with `v^s = u`, or `None` when the root is not an integral element.
    pub fn nth_root(&self, u: &MalcevElement, s: u32) -> Result<Option<MalcevElement>> {
        self.check(u)?;
        if s < 2 {
            return Err(Error::InvalidArgument("root index must be at least 2".into()));
        }
        let sq = Q::from_integer(BigInt::from(s));
        let mut v = vec![Q::zero(); self.hirsch_length()];
        for d in 1..=self.class() {
            // degree-d coordinates of v^s are s v_l plus a polynomial in
            // lower coordinates, and v_l is still zero here
            let w = self.power_rational(&v, &sq)?;
            for l in self.table.degree_range(d) {
                v[l] = (Q::from_integer(u.coords[l].clone()) - w[l].clone()) / sq.clone();
            }
        }
        if v.iter().any(|q| !q.is_integer()) {
            return Ok(None);
        }
        let root = self.to_element(v)?;
        if self.power(&root, &BigInt::from(s))? != *u {
            return Err(Error::Verification("root does not power back".into()));
        }
        Ok(Some(root))
    }

    /// True iff the abelianization images of `elements` span a free abelian
    /// group of rank `elements.len()`.
    pub fn free_rank_certificate(&self, elements: &[MalcevElement]) -> Result<bool> {
        for u in elements {
            self.check(u)?;
        }
        let n = elements.len();
        if n == 0 {
            return Ok(true);
        }
        if n > self.rank() {
            return Ok(false);
        }
        let rows: Vec<Vec<BigInt>> = elements
            .iter()
            .map(|u| u.coords[..self.rank()].to_vec())
            .collect();
        let m = IntMatrix::from_rows(rows, self.rank())?;
        Ok(smith_normal_form(&m)?.rank() == n)
    }

    /// `b_1^e b_2^e ... b_n^e` for the first `n` generators.
    pub fn generator_power_product(&self, n: usize, e: &BigInt) -> Result<MalcevElement> {
        let powers = (0..n)
            .map(|i| self.power(&self.generator(i), e))
            .collect::<Result<Vec<_>>>()?;
        self.multiply_all(&powers)
    }

    /// Readable word `a^2 b [b,a]^-1` with the given generator names.
    pub fn render(&self, u: &MalcevElement, names: &dyn Fn(usize) -> String) -> String {
        let parts: Vec<String> = u
            .coords
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(|(l, e)| {
                let w = self.table.word_string(l, names);
                if e.is_one() {
                    w
                } else {
                    format!("{w}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn basis_order_n22() {
        let g = NilpotentGroup::new(2, 2).unwrap();
        assert_eq!(g.hirsch_length(), 3);
        let names = |i: usize| ["a", "b"][i].to_string();
        assert_eq!(g.table().word_string(2, &names), "[b,a]");
    }

    #[test]
    fn b_times_a() {
        // b a = a b [b, a]
        let g = NilpotentGroup::new(2, 2).unwrap();
        let ba = g.multiply(&g.generator(1), &g.generator(0)).unwrap();
        assert_eq!(ba.coords, vec![big(1), big(1), big(1)]);
        let ab = g.multiply(&g.generator(0), &g.generator(1)).unwrap();
        assert_eq!(ab.coords, vec![big(1), big(1), big(0)]);
        let abab = g.multiply(&ab, &ab).unwrap();
        assert_eq!(abab.coords, vec![big(2), big(2), big(1)]);
    }

    #[test]
    fn commutator_is_basis_element() {
        let g = NilpotentGroup::new(3, 3).unwrap();
        let t = g.table();
        for l in t.degree_range(2).chain(t.degree_range(3)) {
            if let Shape::Bracket(u, v) = t.word(l).shape {
                let c = g.commutator(&g.basis_element(u), &g.basis_element(v)).unwrap();
                assert_eq!(c, g.basis_element(l));
            }
        }
    }

    #[test]
    fn inverse_and_identity() {
        let g = NilpotentGroup::new(2, 3).unwrap();
        let u = g.element_i64(&[3, -2, 5, 1, -4]).unwrap();
        let ui = g.inverse(&u).unwrap();
        assert!(g.multiply(&u, &ui).unwrap().is_identity());
        assert_eq!(g.multiply(&u, &g.identity()).unwrap(), u);
        assert!(g.power(&u, &big(0)).unwrap().is_identity());
    }

    #[test]
    fn ambient_mismatch() {
        let g = NilpotentGroup::new(2, 3).unwrap();
        let h = NilpotentGroup::new(2, 2).unwrap();
        assert!(matches!(
            g.multiply(&g.generator(0), &h.generator(0)),
            Err(Error::AmbientMismatch(..))
        ));
    }

    #[test]
    fn roots() {
        let g = NilpotentGroup::new(2, 2).unwrap();
        let u = g.generator_power_product(2, &big(4)).unwrap();
        let d = g.nth_root(&u, 2).unwrap().unwrap();
        assert_eq!(d.coords, vec![big(2), big(2), big(-2)]);
        assert_eq!(g.nth_root(&g.generator(0), 2).unwrap(), None);
    }

    #[test]
    fn free_rank() {
        let g = NilpotentGroup::new(2, 2).unwrap();
        let a = g.generator(0);
        let a2 = g.power(&a, &big(2)).unwrap();
        assert!(!g.free_rank_certificate(&[a.clone(), a2]).unwrap());
        let ac = g.multiply(&a, &g.basis_element(2)).unwrap();
        assert!(g.free_rank_certificate(&[ac, g.generator(1)]).unwrap());
    }

    #[test]
    fn json_schema() {
        let g = NilpotentGroup::new(2, 2).unwrap();
        let u = g.element_i64(&[1, -1, 12]).unwrap();
        assert_eq!(u.to_json(), r#"{"rank":2,"class":2,"coords":[1,-1,12]}"#);
        assert_eq!(MalcevElement::from_json(&u.to_json()).unwrap(), u);
    }
}
