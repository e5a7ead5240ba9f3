//! Hall basis of the free Lie ring on `r` generators truncated at class `c`,
//! with integer structure constants.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Bump when the basis construction or the table layout changes.
pub const TABLE_VERSION: u32 = 1;

/// Default guard on `r^c` for [`build_hall_basis`].
pub const DEFAULT_WORD_BOUND: u64 = 50_000_000;

/// Total order on generators used to seed the Hall order.
///
/// Words of higher degree are always larger; inside a degree above one, words
/// compare by creation order. Degree-one words compare by the generator rank
/// chosen here, while their storage order always follows the generator index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HallOrder {
    /// `x_0 < x_1 < ... < x_{r-1}`
    Standard,
    /// `x_0 > x_1 > ... > x_{r-1}`
    Reversed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Generator(usize),
    /// Bracket of two basis words given by global index, left > right.
    Bracket(usize, usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallWord {
    pub degree: usize,
    pub shape: Shape,
    /// Position inside its degree.
    pub ordinal: usize,
}

/// Sparse integer vector over global word indices, sorted by index.
pub type Sparse = Vec<(usize, i64)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureTable {
    rank: usize,
    class: usize,
    order: HallOrder,
    words: Vec<HallWord>,
    /// `offsets[d - 1]..offsets[d]` are the degree-`d` words.
    offsets: Vec<usize>,
    /// `[u, v]` for every pair `u > v` with `deg u + deg v <= class`.
    brackets: HashMap<(usize, usize), Sparse>,
}

fn rank_key(order: HallOrder, r: usize, word: &HallWord) -> (usize, usize) {
    match word.shape {
        Shape::Generator(i) => match order {
            HallOrder::Standard => (1, i),
            HallOrder::Reversed => (1, r - 1 - i),
        },
        Shape::Bracket(..) => (word.degree, word.ordinal),
    }
}

/// Enumerates the Hall words only, degree by degree.
fn hall_words(r: usize, c: usize, order: HallOrder) -> (Vec<HallWord>, Vec<usize>) {
    let mut words: Vec<HallWord> = (0..r)
        .map(|i| HallWord {
            degree: 1,
            shape: Shape::Generator(i),
            ordinal: i,
        })
        .collect();
    let mut offsets = vec![0, r];
    for n in 2..=c {
        let mut fresh = Vec::new();
        for du in n.div_ceil(2)..n {
            let dv = n - du;
            for u in offsets[du - 1]..offsets[du] {
                for v in offsets[dv - 1]..offsets[dv] {
                    let (wu, wv) = (&words[u], &words[v]);
                    if rank_key(order, r, wu) <= rank_key(order, r, wv) {
                        continue;
                    }
                    let ok = match wu.shape {
                        Shape::Generator(_) => true,
                        Shape::Bracket(_, u2) => {
                            rank_key(order, r, &words[u2]) <= rank_key(order, r, wv)
                        }
                    };
                    if ok {
                        fresh.push(HallWord {
                            degree: n,
                            shape: Shape::Bracket(u, v),
                            ordinal: fresh.len(),
                        });
                    }
                }
            }
        }
        words.extend(fresh);
        offsets.push(words.len());
    }
    (words, offsets)
}

/// Dimension of degree `n` of the free Lie ring on `r` generators:
/// `(1/n) sum_{d | n} mu(d) r^(n/d)`.
pub fn witt_dimension(r: usize, n: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            let mu = mobius(d);
            if mu != 0 {
                acc += BigInt::from(mu) * BigInt::from(r).pow((n / d) as u32);
            }
        }
    }
    acc / BigInt::from(n)
}

pub(crate) fn mobius(mut n: usize) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

struct Rewriter<'a> {
    r: usize,
    order: HallOrder,
    words: &'a [HallWord],
    index: HashMap<(usize, usize), usize>,
    memo: HashMap<(usize, usize), Sparse>,
}

impl Rewriter<'_> {
    fn key(&self, i: usize) -> (usize, usize) {
        rank_key(self.order, self.r, &self.words[i])
    }

    fn bracket(&mut self, u: usize, v: usize) -> Sparse {
        if u == v {
            return Vec::new();
        }
        if self.key(u) < self.key(v) {
            return negate(&self.bracket(v, u));
        }
        if let Some(hit) = self.memo.get(&(u, v)) {
            return hit.clone();
        }
        let out = match self.words[u].shape {
            Shape::Bracket(u1, u2) if self.key(u2) > self.key(v) => {
                // [[u1,u2],v] = [[u1,v],u2] + [u1,[u2,v]]
                let a = self.bracket(u1, v);
                let left = self.bracket_sparse_word(&a, u2);
                let b = self.bracket(u2, v);
                let right = negate(&self.bracket_sparse_word(&b, u1));
                add(&left, &right)
            }
            _ => vec![(self.index[&(u, v)], 1)],
        };
        self.memo.insert((u, v), out.clone());
        out
    }

    fn bracket_sparse_word(&mut self, x: &Sparse, w: usize) -> Sparse {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(i, c) in x {
            for (j, d) in self.bracket(i, w) {
                let e = acc.entry(j).or_insert(0);
                *e = e.checked_add(c.checked_mul(d).expect("overflow")).expect("overflow");
            }
        }
        normalize(acc)
    }
}

fn normalize(acc: HashMap<usize, i64>) -> Sparse {
    let mut v: Sparse = acc.into_iter().filter(|&(_, c)| c != 0).collect();
    v.sort_unstable();
    v
}

fn negate(x: &Sparse) -> Sparse {
    x.iter().map(|&(i, c)| (i, -c)).collect()
}

fn add(x: &Sparse, y: &Sparse) -> Sparse {
    let mut acc: HashMap<usize, i64> = HashMap::new();
    for &(i, c) in x.iter().chain(y) {
        *acc.entry(i).or_insert(0) += c;
    }
    normalize(acc)
}

/// Hall basis and structure constants of the free Lie ring of rank `r`,
/// class `c`, in the standard order.
pub fn build_hall_basis(r: usize, c: usize) -> Result<StructureTable> {
    StructureTable::build(r, c, HallOrder::Standard, DEFAULT_WORD_BOUND)
}

impl StructureTable {
    pub fn build(r: usize, c: usize, order: HallOrder, word_bound: u64) -> Result<Self> {
        if r == 0 || c == 0 {
            return Err(Error::InvalidArgument("rank and class must be positive".into()));
        }
        let size = (r as u64).checked_pow(c as u32).unwrap_or(u64::MAX);
        if size > word_bound {
            return Err(Error::ResourceLimit(format!(
                "rank {r} class {c}: r^c = {size} exceeds bound {word_bound}"
            )));
        }
        let (words, offsets) = hall_words(r, c, order);
        let mut index = HashMap::new();
        for (i, w) in words.iter().enumerate() {
            if let Shape::Bracket(u, v) = w.shape {
                index.insert((u, v), i);
            }
        }
        let mut rw = Rewriter {
            r,
            order,
            words: &words,
            index,
            memo: HashMap::new(),
        };
        let mut brackets = HashMap::new();
        for n in 2..=c {
            for du in n.div_ceil(2)..n {
                let dv = n - du;
                for u in offsets[du - 1]..offsets[du] {
                    for v in offsets[dv - 1]..offsets[dv] {
                        if rw.key(u) > rw.key(v) {
                            let b = rw.bracket(u, v);
                            brackets.insert((u, v), b);
                        }
                    }
                }
            }
        }
        drop(rw);
        Ok(StructureTable {
            rank: r,
            class: c,
            order,
            words,
            offsets,
            brackets,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn class(&self) -> usize {
        self.class
    }

    pub fn order(&self) -> HallOrder {
        self.order
    }

    pub fn words(&self) -> &[HallWord] {
        &self.words
    }

    pub fn word(&self, i: usize) -> &HallWord {
        &self.words[i]
    }

    pub fn dims(&self) -> Vec<usize> {
        (1..=self.class).map(|d| self.dim(d)).collect()
    }

    /// Dimension of degree `d`; zero outside `1..=class`.
    pub fn dim(&self, d: usize) -> usize {
        if d == 0 || d > self.class {
            0
        } else {
            self.offsets[d] - self.offsets[d - 1]
        }
    }

    /// Global indices of the degree-`d` words.
    pub fn degree_range(&self, d: usize) -> std::ops::Range<usize> {
        self.offsets[d - 1]..self.offsets[d]
    }

    pub fn total_dim(&self) -> usize {
        self.words.len()
    }

    fn greater(&self, u: usize, v: usize) -> bool {
        rank_key(self.order, self.rank, &self.words[u]) > rank_key(self.order, self.rank, &self.words[v])
    }

    /// `[u, v]` in the Hall basis (global indices); empty past the class.
    pub fn bracket(&self, u: usize, v: usize) -> Sparse {
        if u == v || self.words[u].degree + self.words[v].degree > self.class {
            return Vec::new();
        }
        if self.greater(u, v) {
            self.brackets[&(u, v)].clone()
        } else {
            negate(&self.brackets[&(v, u)])
        }
    }

    /// Bracket of dense homogeneous vectors of degrees `a` and `b`, returned
    /// as a dense vector of degree `a + b` (empty if past the class).
    pub fn bracket_dense(&self, a: usize, x: &[BigInt], b: usize, y: &[BigInt]) -> Vec<BigInt> {
        let n = a + b;
        if n > self.class {
            return Vec::new();
        }
        let (oa, ob, on) = (self.offsets[a - 1], self.offsets[b - 1], self.offsets[n - 1]);
        let mut out = vec![BigInt::zero(); self.dim(n)];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || oa + i == ob + j {
                    continue;
                }
                let coeff = xi * yj;
                let (u, v, sign) = if self.greater(oa + i, ob + j) {
                    (oa + i, ob + j, 1)
                } else {
                    (ob + j, oa + i, -1)
                };
                for &(w, c) in &self.brackets[&(u, v)] {
                    let t = &coeff * (c * sign);
                    out[w - on] += t;
                }
            }
        }
        out
    }

    /// Dense unit vector of a basis word inside its degree.
    pub fn unit(&self, i: usize) -> Vec<BigInt> {
        let d = self.words[i].degree;
        let mut v = vec![BigInt::zero(); self.dim(d)];
        v[i - self.offsets[d - 1]] = BigInt::from(1);
        v
    }

    /// Dense coordinates of a sparse vector known to live in degree `d`.
    pub fn densify(&self, d: usize, x: &Sparse) -> Vec<BigInt> {
        let o = self.offsets[d - 1];
        let mut v = vec![BigInt::zero(); self.dim(d)];
        for &(i, c) in x {
            v[i - o] += c;
        }
        v
    }

    /// Nested index arrays: a generator is its index, a bracket `[u, v]` is
    /// a two-element array.
    pub fn word_tree(&self, i: usize) -> Value {
        match self.words[i].shape {
            Shape::Generator(g) => Value::from(g),
            Shape::Bracket(u, v) => Value::Array(vec![self.word_tree(u), self.word_tree(v)]),
        }
    }

    /// `[[x1,x0],x0]`-style rendering with generator names from `names`.
    pub fn word_string(&self, i: usize, names: &dyn Fn(usize) -> String) -> String {
        match self.words[i].shape {
            Shape::Generator(g) => names(g),
            Shape::Bracket(u, v) => {
                format!("[{},{}]", self.word_string(u, names), self.word_string(v, names))
            }
        }
    }

    /// Left-normed index sequence `[[[i1,i2],i3],...]`, if the word has that shape.
    pub fn left_normed(&self, i: usize) -> Option<Vec<usize>> {
        match self.words[i].shape {
            Shape::Generator(g) => Some(vec![g]),
            Shape::Bracket(u, v) => match self.words[v].shape {
                Shape::Generator(g) => {
                    let mut s = self.left_normed(u)?;
                    s.push(g);
                    Some(s)
                }
                Shape::Bracket(..) => None,
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableRepr::from(self)).expect("serializable")
    }

    /// Loads a cached table; the basis is regenerated and compared so a
    /// stale or foreign cache is rejected rather than trusted.
    pub fn from_json(s: &str) -> Result<Self> {
        let repr: TableRepr = serde_json::from_str(s)?;
        if repr.version != TABLE_VERSION {
            return Err(Error::Parse(format!("table version {} != {TABLE_VERSION}", repr.version)));
        }
        let (words, offsets) = hall_words(repr.rank, repr.class, repr.order);
        let table = StructureTable {
            rank: repr.rank,
            class: repr.class,
            order: repr.order,
            words,
            offsets,
            brackets: HashMap::new(),
        };
        let trees: Vec<Value> = (0..table.words.len()).map(|i| table.word_tree(i)).collect();
        if trees != repr.words {
            return Err(Error::Parse("cached basis does not match the Hall construction".into()));
        }
        let mut brackets = HashMap::new();
        for (u, v, terms) in repr.brackets {
            if u >= table.words.len() || v >= table.words.len() || !table.greater(u, v) {
                return Err(Error::Parse(format!("bad bracket key ({u}, {v})")));
            }
            brackets.insert((u, v), terms);
        }
        let expected = table.expected_pairs();
        if brackets.len() != expected {
            return Err(Error::Parse(format!(
                "cached table has {} brackets, expected {expected}",
                brackets.len()
            )));
        }
        Ok(StructureTable { brackets, ..table })
    }

    fn expected_pairs(&self) -> usize {
        let mut count = 0;
        for n in 2..=self.class {
            for du in n.div_ceil(2)..n {
                let dv = n - du;
                for u in self.degree_range(du) {
                    count += self.degree_range(dv).filter(|&v| self.greater(u, v)).count();
                }
            }
        }
        count
    }
}

impl fmt::Display for StructureTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "free Lie ring rank {} class {} ({:?} order), dims {:?}",
            self.rank,
            self.class,
            self.order,
            self.dims()
        )
    }
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    version: u32,
    rank: usize,
    class: usize,
    order: HallOrder,
    words: Vec<Value>,
    brackets: Vec<(usize, usize, Sparse)>,
}

impl From<&StructureTable> for TableRepr {
    fn from(t: &StructureTable) -> Self {
        let mut brackets: Vec<(usize, usize, Sparse)> = t
            .brackets
            .iter()
            .map(|(&(u, v), s)| (u, v, s.clone()))
            .collect();
        brackets.sort_unstable_by_key(|b| (b.0, b.1));
        TableRepr {
            version: TABLE_VERSION,
            rank: t.rank,
            class: t.class,
            order: t.order,
            words: (0..t.words.len()).map(|i| t.word_tree(i)).collect(),
            brackets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(build_hall_basis(2, 4).unwrap().dims(), vec![2, 1, 2, 3]);
        assert_eq!(build_hall_basis(4, 3).unwrap().dims(), vec![4, 6, 20]);
        assert_eq!(build_hall_basis(1, 3).unwrap().dims(), vec![1, 0, 0]);
    }

    #[test]
    fn witt_numbers() {
        assert_eq!(witt_dimension(2, 5), BigInt::from(6));
        assert_eq!(witt_dimension(6, 4), BigInt::from(315));
        assert_eq!(witt_dimension(4, 4), BigInt::from(60));
    }

    #[test]
    fn mobius_values() {
        let mu: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(mu, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn generator_bracket_signs() {
        let t = build_hall_basis(2, 2).unwrap();
        // only Hall word of degree 2 is [x1, x0] in the standard order
        assert_eq!(t.word(2).shape, Shape::Bracket(1, 0));
        assert_eq!(t.bracket(1, 0), vec![(2, 1)]);
        assert_eq!(t.bracket(0, 1), vec![(2, -1)]);
        assert!(t.bracket(0, 0).is_empty());
        let rev = StructureTable::build(2, 2, HallOrder::Reversed, 100).unwrap();
        assert_eq!(rev.word(2).shape, Shape::Bracket(0, 1));
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(
            StructureTable::build(10, 9, HallOrder::Standard, 1_000_000),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn json_roundtrip() {
        let t = build_hall_basis(3, 4).unwrap();
        let back = StructureTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        let other = StructureTable::build(3, 4, HallOrder::Reversed, 1000).unwrap();
        let mut forged: serde_json::Value = serde_json::from_str(&other.to_json()).unwrap();
        forged["order"] = "standard".into();
        assert!(StructureTable::from_json(&forged.to_string()).is_err());
    }
}
