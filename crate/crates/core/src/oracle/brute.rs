//! Brute-force twisted conjugacy classes in finite quotients of free
//! nilpotent groups: Malcev coordinates reduced modulo `m`.
//!
//! Group operations are polynomial in the coordinates with denominators
//! built from primes at most the class, so reduction modulo `m` is a
//! homomorphism as soon as every prime divisor of `m` exceeds the class.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::lie::Shape;
use crate::nilpotent::{MalcevElement, NilpotentGroup};
use crate::par;

/// Largest group order enumerated by default.
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

/// `N(r, c)` modulo `m` with an endomorphism given by generator images.
#[derive(Clone, Debug)]
pub struct FiniteTwistedSetup {
    modulus: u64,
    group: NilpotentGroup,
    /// Reduced coordinates of `phi(a_j)`.
    images: Vec<Vec<u64>>,
    order: u64,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteTwistedSetup {
    /// `phi(a_j)` given by reduced Malcev coordinates.
    pub fn new(modulus: u64, rank: usize, class: usize, images: Vec<Vec<u64>>, max_order: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgument("modulus must be at least 2".into()));
        }
        if let Some(&p) = prime_divisors(modulus).iter().find(|&&p| p as usize <= class) {
            return Err(Error::InvalidArgument(format!(
                "prime {p} divides the modulus but does not exceed the class {class}; reduction would not be a homomorphism"
            )));
        }
        let group = NilpotentGroup::new(rank, class)?;
        let h = group.hirsch_length() as u32;
        let order = modulus
            .checked_pow(h)
            .filter(|&o| o <= max_order)
            .ok_or_else(|| Error::ResourceLimit(format!("group of order {modulus}^{h} exceeds {max_order}")))?;
        if images.len() != rank || images.iter().any(|v| v.len() != h as usize) {
            return Err(Error::DimensionMismatch(format!("need {rank} images with {h} coordinates")));
        }
        let images = images
            .into_iter()
            .map(|v| v.into_iter().map(|x| x % modulus).collect())
            .collect();
        Ok(FiniteTwistedSetup {
            modulus,
            group,
            images,
            order,
        })
    }

    /// `phi(a_j) = a_1^{M[0][j]} ... a_r^{M[r-1][j]}` (column `j` of `M`).
    pub fn from_matrix(modulus: u64, class: usize, m: &IntMatrix, max_order: u64) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NonSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let r = m.rows();
        let group = NilpotentGroup::new(r, class)?;
        let images = (0..r)
            .map(|j| {
                let factors = (0..r)
                    .map(|i| group.power(&group.generator(i), m.get(i, j)))
                    .collect::<Result<Vec<_>>>()?;
                let img = group.multiply_all(&factors)?;
                Ok(reduce(&img.coords, modulus))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, r, class, images, max_order)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn group(&self) -> &NilpotentGroup {
        &self.group
    }

    pub fn images(&self) -> &[Vec<u64>] {
        &self.images
    }

    pub fn encode(&self, coords: &[u64]) -> u64 {
        coords.iter().rev().fold(0, |acc, &x| acc * self.modulus + x)
    }

    pub fn decode(&self, mut index: u64) -> Vec<u64> {
        let h = self.group.hirsch_length();
        let mut out = Vec::with_capacity(h);
        for _ in 0..h {
            out.push(index % self.modulus);
            index /= self.modulus;
        }
        out
    }

    fn lift(&self, coords: &[u64]) -> Result<MalcevElement> {
        self.group.element(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn multiply(&self, u: &[u64], v: &[u64]) -> Result<Vec<u64>> {
        let w = self.group.multiply(&self.lift(u)?, &self.lift(v)?)?;
        Ok(reduce(&w.coords, self.modulus))
    }

    pub fn multiply_all(&self, items: &[&[u64]]) -> Result<Vec<u64>> {
        let lifted = items.iter().map(|u| self.lift(u)).collect::<Result<Vec<_>>>()?;
        let w = self.group.multiply_all(&lifted)?;
        Ok(reduce(&w.coords, self.modulus))
    }

    pub fn inverse(&self, u: &[u64]) -> Result<Vec<u64>> {
        let w = self.group.inverse(&self.lift(u)?)?;
        Ok(reduce(&w.coords, self.modulus))
    }

    /// `phi(u)`: images of all Hall basis elements by commutators, then the
    /// ordered product of their powers.
    pub fn apply(&self, u: &[u64]) -> Result<Vec<u64>> {
        let basis = self.basis_images()?;
        apply_with(&self.group, &basis, u, self.modulus)
    }

    fn basis_images(&self) -> Result<Vec<MalcevElement>> {
        let gens = self.images.iter().map(|v| self.lift(v)).collect::<Result<Vec<_>>>()?;
        hall_images(&self.group, &gens)
    }

    /// Same group with `alpha phi alpha^-1`, where `alpha` is the
    /// endomorphism with generator images `alpha_images`; fails unless
    /// `alpha` is bijective on the finite group.
    pub fn conjugated(&self, alpha_images: &[Vec<u64>]) -> Result<Self> {
        let alpha_gens = alpha_images.iter().map(|v| self.lift(v)).collect::<Result<Vec<_>>>()?;
        let alpha_basis = hall_images(&self.group, &alpha_gens)?;
        let perm: Vec<u64> = par::map_range(0..self.order as usize, |x| {
            apply_with(&self.group, &alpha_basis, &self.decode(x as u64), self.modulus).map(|y| self.encode(&y))
        })
        .into_iter()
        .collect::<Result<_>>()?;
        let mut inverse = vec![u64::MAX; perm.len()];
        for (x, &y) in perm.iter().enumerate() {
            if inverse[y as usize] != u64::MAX {
                return Err(Error::InvalidArgument("conjugating map is not bijective".into()));
            }
            inverse[y as usize] = x as u64;
        }
        let phi_basis = self.basis_images()?;
        let r = self.group.rank();
        let images = (0..r)
            .map(|j| {
                let gen = self.group.generator(j);
                let pre = self.decode(inverse[self.encode(&reduce(&gen.coords, self.modulus)) as usize]);
                let mid = apply_with(&self.group, &phi_basis, &pre, self.modulus)?;
                apply_with(&self.group, &alpha_basis, &mid, self.modulus)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.modulus, r, self.group.class(), images, self.order)
    }
}

fn reduce(coords: &[BigInt], m: u64) -> Vec<u64> {
    let md = BigInt::from(m);
    coords
        .iter()
        .map(|x| x.mod_floor(&md).to_u64().expect("reduced below modulus"))
        .collect()
}

fn hall_images(group: &NilpotentGroup, gens: &[MalcevElement]) -> Result<Vec<MalcevElement>> {
    let t = group.table();
    let mut out: Vec<MalcevElement> = Vec::with_capacity(t.total_dim());
    for l in 0..t.total_dim() {
        let img = match t.word(l).shape {
            Shape::Generator(i) => gens[i].clone(),
            Shape::Bracket(u, v) => group.commutator(&out[u], &out[v])?,
        };
        out.push(img);
    }
    Ok(out)
}

fn apply_with(group: &NilpotentGroup, basis: &[MalcevElement], u: &[u64], m: u64) -> Result<Vec<u64>> {
    let factors = u
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .map(|(l, &e)| group.power(&basis[l], &BigInt::from(e)))
        .collect::<Result<Vec<_>>>()?;
    let w = group.multiply_all(&factors)?;
    Ok(reduce(&w.coords, m))
}

struct UnionFind {
    parent: Vec<u64>,
}

impl UnionFind {
    fn new(n: u64) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: u64) -> u64 {
        while self.parent[x as usize] != x {
            let p = self.parent[x as usize];
            self.parent[x as usize] = self.parent[p as usize];
            x = p;
        }
        x
    }

    fn union(&mut self, a: u64, b: u64) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb) as usize] = ra.min(rb);
        true
    }
}

/// Number of orbits of `x -> z x phi(z)^-1`. Orbits are generated by the
/// moves with `z` a generator; targets are computed in parallel and merged
/// in a single union-find pass.
pub fn brute_force_twisted_classes(setup: &FiniteTwistedSetup) -> Result<u64> {
    let r = setup.group.rank();
    let gens: Vec<Vec<u64>> = (0..r)
        .map(|j| reduce(&setup.group.generator(j).coords, setup.modulus))
        .collect();
    let phi_inv: Vec<Vec<u64>> = setup
        .images
        .iter()
        .map(|v| setup.inverse(v))
        .collect::<Result<_>>()?;
    let targets: Vec<Vec<u64>> = par::map_range(0..setup.order as usize, |x| {
        let xc = setup.decode(x as u64);
        (0..r)
            .map(|j| {
                setup
                    .multiply_all(&[&gens[j], &xc, &phi_inv[j]])
                    .map(|y| setup.encode(&y))
            })
            .collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut uf = UnionFind::new(setup.order);
    let mut classes = setup.order;
    for (x, ts) in targets.iter().enumerate() {
        for &y in ts {
            if uf.union(x as u64, y) {
                classes -= 1;
            }
        }
    }
    Ok(classes)
}

/// Ordinary conjugacy classes of the finite group (identity twist).
pub fn conjugacy_classes(modulus: u64, rank: usize, class: usize, max_order: u64) -> Result<u64> {
    let id = IntMatrix::identity(rank);
    brute_force_twisted_classes(&FiniteTwistedSetup::from_matrix(modulus, class, &id, max_order)?)
}

/// Class equation check: `|G| = sum over classes of |class|`, computing
/// each class by orbit enumeration and comparing with centralizer sizes.
pub fn class_equation_holds(modulus: u64, rank: usize, class: usize, max_order: u64) -> Result<bool> {
    let setup = FiniteTwistedSetup::from_matrix(modulus, class, &IntMatrix::identity(rank), max_order)?;
    let n = setup.order;
    let all: Vec<Vec<u64>> = (0..n).map(|x| setup.decode(x)).collect();
    let mut seen = vec![false; n as usize];
    let mut total = 0u64;
    for x in 0..n {
        if seen[x as usize] {
            continue;
        }
        let xc = &all[x as usize];
        let mut size = 0u64;
        let mut centralizer = 0u64;
        let conj = par::map(&all, |z| -> Result<(u64, bool)> {
            let zx = setup.multiply(z, xc)?;
            let xz = setup.multiply(xc, z)?;
            let c = setup.multiply(&zx, &setup.inverse(z)?)?;
            Ok((setup.encode(&c), zx == xz))
        });
        for item in conj {
            let (c, commutes) = item?;
            if commutes {
                centralizer += 1;
            }
            if !seen[c as usize] {
                seen[c as usize] = true;
                size += 1;
            }
        }
        if size * centralizer != n {
            return Ok(false);
        }
        total += size;
    }
    Ok(total == n)
}
