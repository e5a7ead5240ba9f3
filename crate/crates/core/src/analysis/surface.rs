//! Surfaces, the form `Omega`, and admissible matrices `S Omega S^T = +-Omega`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{induced_tower_to, orientable_relator, StructureTable};
use crate::linalg::IntMatrix;

/// A closed surface. `genus` is the usual genus: `g` for the orientable
/// surface with `2g` generators, `g + 1` for the non-orientable surface
/// `N_{g+1}` with generators `a_1, ..., a_{g+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub orientable: bool,
    pub genus: usize,
}

impl SurfaceSpec {
    pub fn orientable(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("orientable genus must be at least 1".into()));
        }
        Ok(SurfaceSpec { orientable: true, genus })
    }

    pub fn nonorientable(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidArgument("non-orientable genus must be at least 1".into()));
        }
        Ok(SurfaceSpec { orientable: false, genus })
    }

    /// The parameter `g` in the degree formulas: the genus itself for
    /// orientable surfaces, `genus - 1` otherwise.
    pub fn g(&self) -> usize {
        if self.orientable {
            self.genus
        } else {
            self.genus - 1
        }
    }

    /// Rank of the abelianization modulo torsion.
    pub fn abelian_rank(&self) -> usize {
        if self.orientable {
            2 * self.genus
        } else {
            self.genus - 1
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        if self.orientable {
            2 - 2 * self.genus as i64
        } else {
            2 - self.genus as i64
        }
    }

    /// Degree verdicts are only made for negative Euler characteristic.
    pub fn require_hyperbolic(&self) -> Result<()> {
        if self.euler_characteristic() < 0 {
            return Ok(());
        }
        Err(Error::InvalidArgument(if self.orientable {
            format!("orientable genus {} excluded: need genus >= 2 (torus and sphere have no degree verdict)", self.genus)
        } else {
            format!("non-orientable genus {} excluded: need genus >= 3", self.genus)
        }))
    }

    pub fn name(&self) -> String {
        if self.orientable {
            format!("S_{}", self.genus)
        } else {
            format!("N_{}", self.genus)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_int(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Admissibility {
    Plus,
    Minus,
    None,
}

impl Admissibility {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Admissibility::Plus => Some(Sign::Plus),
            Admissibility::Minus => Some(Sign::Minus),
            Admissibility::None => None,
        }
    }
}

/// Block diagonal with `g` copies of `[[0, 1], [-1, 0]]`.
pub fn omega(g: usize) -> IntMatrix {
    let n = 2 * g;
    IntMatrix::from_fn(n, n, |i, j| {
        if i % 2 == 0 && j == i + 1 {
            BigInt::one()
        } else if i % 2 == 1 && j + 1 == i {
            -BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

fn require_size(s: &IntMatrix, g: usize) -> Result<()> {
    if s.rows() != 2 * g || s.cols() != 2 * g {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, genus {g} needs {}x{}",
            s.rows(),
            s.cols(),
            2 * g,
            2 * g
        )));
    }
    Ok(())
}

/// Classifies `S Omega S^T` as `+Omega`, `-Omega` or neither.
pub fn admissibility(s: &IntMatrix, g: usize) -> Result<Admissibility> {
    require_size(s, g)?;
    let w = omega(g);
    let form = s.checked_mul(&w)?.checked_mul(&s.transpose())?;
    Ok(if form == w {
        Admissibility::Plus
    } else if form == -&w {
        Admissibility::Minus
    } else {
        Admissibility::None
    })
}

/// Describes the first entry where `S Omega S^T` differs from both `+Omega`
/// and `-Omega`, for error messages.
pub fn admissibility_failure(s: &IntMatrix, g: usize) -> Result<Option<String>> {
    if admissibility(s, g)? != Admissibility::None {
        return Ok(None);
    }
    let w = omega(g);
    let form = s.checked_mul(&w)?.checked_mul(&s.transpose())?;
    for sign in [1i64, -1] {
        let target = w.scale(&BigInt::from(sign));
        for i in 0..form.rows() {
            for j in 0..form.cols() {
                if form.get(i, j) != target.get(i, j) {
                    let label = if sign == 1 { "+Omega" } else { "-Omega" };
                    return Ok(Some(format!(
                        "S Omega S^T differs from {label} at ({}, {}): {} != {}",
                        i + 1,
                        j + 1,
                        form.get(i, j),
                        target.get(i, j)
                    )));
                }
            }
        }
    }
    Ok(Some("S Omega S^T is not +-Omega".into()))
}

/// Sign `e` with `M_2 r = e r` for the induced degree-2 map and the
/// relator `r = sum [a_i, b_i]`, if any.
pub fn relator_image_sign(s: &IntMatrix, g: usize, t: &StructureTable) -> Result<Option<Sign>> {
    require_size(s, g)?;
    let r = orientable_relator(g, t)?;
    let tower = induced_tower_to(t, s, 2)?;
    let image = tower.degree(2).mul_vec(&r.coords)?;
    let neg: Vec<BigInt> = r.coords.iter().map(|x| -x).collect();
    Ok(if image == r.coords {
        Some(Sign::Plus)
    } else if image == neg {
        Some(Sign::Minus)
    } else {
        None
    })
}

/// True iff the admissibility sign of `S` equals the sign with which the
/// induced map fixes the relator in degree two (both `None` counts as
/// agreement). The two sides are computed independently.
pub fn bigcondition_equivalence(s: &IntMatrix, g: usize, t: &StructureTable) -> Result<bool> {
    Ok(admissibility(s, g)?.sign() == relator_image_sign(s, g, t)?)
}

/// Block diagonal with `g` copies of `[[1, 2], [1, 1]]`; charpoly
/// `(x^2 - 2x - 1)^g`, admissible with sign minus.
pub fn orientable_witness(g: usize) -> IntMatrix {
    let block = IntMatrix::from_i64_rows(&[[1, 2], [1, 1]]);
    IntMatrix::block_diagonal(&vec![block; g])
}

/// Block diagonal with `g` copies of `[[0, 1], [1, 0]]`; `P Omega P^T = -Omega`.
pub fn block_swap(g: usize) -> IntMatrix {
    let block = IntMatrix::from_i64_rows(&[[0, 1], [1, 0]]);
    IntMatrix::block_diagonal(&vec![block; g])
}

/// `I + k v v^T Omega`, the symplectic transvection along `v`.
pub fn transvection(g: usize, v: &[BigInt], k: &BigInt) -> Result<IntMatrix> {
    let n = 2 * g;
    if v.len() != n {
        return Err(Error::DimensionMismatch(format!("vector of length {} for genus {g}", v.len())));
    }
    let vt_omega = omega(g).transpose().mul_vec(v)?;
    Ok(IntMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { BigInt::one() } else { BigInt::zero() };
        delta + k * &v[i] * &vt_omega[j]
    }))
}

fn random_direction(rng: &mut ChaCha8Rng, n: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    let i = rng.gen_range(0..n);
    v[i] = BigInt::one();
    if rng.gen_bool(0.5) {
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        v[j] = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
    }
    v
}

/// Product of `length` random transvections along `e_i` or `e_i +- e_j`
/// with `k = +-1`; for sign minus the block swap is applied on the left.
/// The result is re-verified before returning.
pub fn sample_admissible(g: usize, sign: Sign, seed: u64, length: usize) -> Result<IntMatrix> {
    if g == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let n = 2 * g;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = IntMatrix::identity(n);
    for _ in 0..length {
        let v = random_direction(&mut rng, n);
        let k = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        s = transvection(g, &v, &k)?.checked_mul(&s)?;
    }
    if sign == Sign::Minus {
        s = block_swap(g).checked_mul(&s)?;
    }
    let expected = match sign {
        Sign::Plus => Admissibility::Plus,
        Sign::Minus => Admissibility::Minus,
    };
    if admissibility(&s, g)? != expected {
        return Err(Error::Verification("sampled matrix is not admissible".into()));
    }
    Ok(s)
}

/// An admissible sample with one entry shifted by `+-1`, or occasionally a
/// small random matrix; never admissible.
pub fn sample_nonadmissible(g: usize, seed: u64, length: usize) -> Result<IntMatrix> {
    let n = 2 * g;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let s = if rng.gen_bool(0.75) {
            let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
            let mut s = sample_admissible(g, sign, rng.gen(), length)?;
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let delta = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
            s.set(i, j, s.get(i, j) + delta);
            s
        } else {
            let data = (0..n * n).map(|_| BigInt::from(rng.gen_range(-2i64..=2))).collect();
            IntMatrix::new(n, n, data)?
        };
        if admissibility(&s, g)? == Admissibility::None {
            return Ok(s);
        }
    }
}
