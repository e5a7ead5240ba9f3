//! Degree verdicts with certificates.
//!
//! An automorphism of `G / gamma_{c+1}(G)` has infinitely many Reidemeister
//! classes iff one of the induced maps `M_1, ..., M_c` on the graded Lie
//! ring has eigenvalue one. The orientable verdict therefore combines a
//! witness with `det(I - M_i) != 0` for `i <= 3` and a structural argument at
//! degree four executed exactly on the witness and on sampled admissible
//! matrices. The non-orientable verdict combines an explicit witness for
//! class `2g - 1` with the product criterion `det(W)^2 = 1` at class `2g`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::surface::{admissibility, admissibility_failure, orientable_witness, sample_admissible, Admissibility, Sign, SurfaceSpec};
use super::witness::{nonorientable_witness, product_criterion, product_spectrum_at_one, NonorientableWitness};
use crate::error::{Error, Result};
use crate::json::Int;
use crate::lie::{
    ideal_quotient, induced_tower_to, metabelian_truncation, orientable_relator, GradedQuotient, HallOrder,
    InducedTower, StructureTable, DEFAULT_WORD_BOUND,
};
use crate::linalg::{charpoly, reciprocal_symmetry_check, IntMatrix, IntPoly, Symmetry};
use crate::par;

pub const SCHEMA_VERSION: u32 = 1;

const SCOPE: &str = "exact computation on the listed matrices; sampled automorphisms are evidence for, \
not a proof of, the statement for every automorphism";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateKind {
    WitnessNotRinf,
    StructuralRinf,
    ProductCriterionRinf,
}

/// Which graded object a determinant was taken on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Lattice {
    /// `L_i(pi_g)`: free Lie ring modulo the relator ideal.
    SurfaceLie,
    /// Degree four of the metabelian truncation of `L(pi_g)`.
    Metabelian,
    /// The free abelian quotient, for the non-orientable witness.
    Abelian,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeDeterminant {
    pub degree: usize,
    pub lattice: Lattice,
    /// `det(I - M_degree)`
    pub det: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: CertificateKind,
    /// Nilpotency class of the quotient the certificate speaks about.
    pub class: usize,
    pub holds: bool,
    pub detail: String,
}

/// How eigenvalue one was found for a sampled matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// `det(I - S) = 0`.
    DegreeOne,
    /// Sign plus: root one of multiplicity `>= g - 1` on `L_2(pi_g)`.
    Case1Multiplicity,
    /// Sign minus with `x^2 + 1 | charpoly(S)`: `det(I - M_2) = 0`.
    ImaginarySubcase,
    /// Sign minus: `det(I - M_4) = 0` on the metabelian truncation.
    MetabelianDegreeFour,
    Undetected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub index: usize,
    pub seed: u64,
    pub sign: Sign,
    pub matrix: IntMatrix,
    pub symmetry: Symmetry,
    pub route: Route,
    pub detected_degree: Option<usize>,
    /// Multiplicity of root one of `charpoly(M_2)` on `L_2(pi_g)` (sign plus).
    pub root_one_multiplicity: Option<usize>,
    pub passes: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleStats {
    pub count: usize,
    pub seed: u64,
    pub length: usize,
    pub plus: usize,
    pub minus: usize,
    pub imaginary_subcase: usize,
    pub failures: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RinfVerdict {
    pub schema: u32,
    pub surface: SurfaceSpec,
    pub hall_order: HallOrder,
    pub max_class: Option<usize>,
    /// The R-infinity nilpotency degree, when established.
    pub degree: Option<u32>,
    /// First degree at which the witness has eigenvalue one.
    pub first_eigenvalue_one_degree: Option<usize>,
    pub witness: Option<IntMatrix>,
    pub determinants: Vec<DegreeDeterminant>,
    pub nonorientable_witness: Option<NonorientableWitness>,
    pub certificates: Vec<Certificate>,
    pub samples: SampleStats,
    pub sample_records: Vec<SampleRecord>,
    pub claim: String,
    pub scope: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOptions {
    /// Stop claiming beyond this class; `None` computes what the verdict needs.
    pub max_class: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    /// Number of transvections per sampled matrix.
    pub length: usize,
    pub order: HallOrder,
    pub max_m: Option<BigInt>,
}

impl Default for DegreeOptions {
    fn default() -> Self {
        DegreeOptions {
            max_class: None,
            samples: 16,
            seed: 0,
            length: 12,
            order: HallOrder::Standard,
            max_m: None,
        }
    }
}

/// The graded Lie ring of `pi_g` through degree `class`, with the
/// metabelian truncation when `class >= 4`.
#[derive(Clone, Debug)]
pub struct SurfaceLie {
    pub g: usize,
    pub table: StructureTable,
    pub quotient: GradedQuotient,
    pub metabelian: Option<GradedQuotient>,
}

impl SurfaceLie {
    pub fn build(g: usize, class: usize, order: HallOrder) -> Result<Self> {
        let table = StructureTable::build(2 * g, class, order, DEFAULT_WORD_BOUND)?;
        Self::from_table(g, table)
    }

    pub fn from_table(g: usize, table: StructureTable) -> Result<Self> {
        if table.rank() != 2 * g {
            return Err(Error::DimensionMismatch(format!(
                "genus {g} needs rank {}, table has rank {}",
                2 * g,
                table.rank()
            )));
        }
        let r = orientable_relator(g, &table)?;
        let quotient = ideal_quotient(&table, &r, table.class())?;
        let metabelian = if table.class() >= 4 {
            Some(metabelian_truncation(&table, &quotient)?)
        } else {
            None
        };
        Ok(SurfaceLie {
            g,
            table,
            quotient,
            metabelian,
        })
    }

    pub fn class(&self) -> usize {
        self.table.class()
    }

    pub fn tower(&self, s: &IntMatrix, up_to: usize) -> Result<InducedTower> {
        induced_tower_to(&self.table, s, up_to)
    }

    /// `det(I - M_i)` on `L_i(pi_g)`.
    pub fn surface_det(&self, tower: &InducedTower, i: usize) -> Result<BigInt> {
        self.quotient.quotient_map(i, tower.degree(i))?.identity_minus()?.det()
    }

    /// `det(I - M_4)` on the metabelian truncation.
    pub fn metabelian_det(&self, tower: &InducedTower) -> Result<BigInt> {
        let met = self
            .metabelian
            .as_ref()
            .ok_or_else(|| Error::InvalidArgument("metabelian truncation needs class >= 4".into()))?;
        met.quotient_map(4, tower.degree(4))?.identity_minus()?.det()
    }

    /// Characteristic polynomial of `M_2` on `L_2(pi_g)`.
    pub fn degree_two_charpoly(&self, tower: &InducedTower) -> Result<IntPoly> {
        charpoly(&self.quotient.quotient_map(2, tower.degree(2))?)
    }
}

/// Runs the degree-4 dichotomy on one admissible matrix.
pub fn analyze_sample(lie: &SurfaceLie, s: &IntMatrix, sign: Sign) -> Result<(Route, Option<usize>, Option<usize>)> {
    let g = lie.g;
    let p = charpoly(s)?;
    if p.eval(&BigInt::one()).is_zero() {
        // still record the multiplicity for plus samples
        let mult = if sign == Sign::Plus {
            let tower = lie.tower(s, 2)?;
            Some(lie.degree_two_charpoly(&tower)?.root_multiplicity(&BigInt::one())?)
        } else {
            None
        };
        return Ok((Route::DegreeOne, Some(1), mult));
    }
    match sign {
        Sign::Plus => {
            let tower = lie.tower(s, 2)?;
            let mult = lie.degree_two_charpoly(&tower)?.root_multiplicity(&BigInt::one())?;
            let detected = (mult >= g.saturating_sub(1) && mult > 0).then_some(2);
            let route = if detected.is_some() { Route::Case1Multiplicity } else { Route::Undetected };
            Ok((route, detected, Some(mult)))
        }
        Sign::Minus => {
            let x2_plus_1 = IntPoly::from_i64(&[1, 0, 1]);
            if x2_plus_1.divides(&p)? {
                let tower = lie.tower(s, 2)?;
                let d2 = lie.surface_det(&tower, 2)?;
                let detected = d2.is_zero().then_some(2);
                let route = if detected.is_some() { Route::ImaginarySubcase } else { Route::Undetected };
                return Ok((route, detected, None));
            }
            let tower = lie.tower(s, 4)?;
            for i in 2..=3 {
                if lie.surface_det(&tower, i)?.is_zero() {
                    return Ok((Route::MetabelianDegreeFour, Some(i), None));
                }
            }
            let detected = lie.metabelian_det(&tower)?.is_zero().then_some(4);
            let route = if detected.is_some() { Route::MetabelianDegreeFour } else { Route::Undetected };
            Ok((route, detected, None))
        }
    }
}

/// Seeds for `count` samples drawn from one master seed; sample `i` has
/// sign plus for even `i` and minus for odd `i`.
pub fn sample_plan(seed: u64, count: usize) -> Vec<(usize, u64, Sign)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let s: u64 = rng.gen();
            let sign = if i % 2 == 0 { Sign::Plus } else { Sign::Minus };
            (i, s, sign)
        })
        .collect()
}

fn sample_record(lie: &SurfaceLie, index: usize, seed: u64, sign: Sign, length: usize) -> Result<SampleRecord> {
    let s = sample_admissible(lie.g, sign, seed, length)?;
    record_for(lie, index, seed, sign, s)
}

fn record_for(lie: &SurfaceLie, index: usize, seed: u64, sign: Sign, s: IntMatrix) -> Result<SampleRecord> {
    let symmetry = reciprocal_symmetry_check(&charpoly(&s)?, lie.g)?;
    let (route, detected_degree, root_one_multiplicity) = analyze_sample(lie, &s, sign)?;
    let passes = detected_degree.is_some_and(|d| d <= 4)
        && match (sign, root_one_multiplicity) {
            (Sign::Plus, Some(m)) => m + 1 >= lie.g,
            _ => true,
        };
    Ok(SampleRecord {
        index,
        seed,
        sign,
        matrix: s,
        symmetry,
        route,
        detected_degree,
        root_one_multiplicity,
        passes,
    })
}

/// Computes the R-infinity nilpotency degree of the surface group.
pub fn rinf_degree(spec: &SurfaceSpec, opts: &DegreeOptions) -> Result<RinfVerdict> {
    spec.require_hyperbolic()?;
    if spec.orientable {
        let lie = SurfaceLie::build(spec.genus, 4, opts.order)?;
        orientable_degree(spec, opts, &lie)
    } else {
        nonorientable_degree(spec, opts)
    }
}

/// As [`rinf_degree`] for an orientable surface, reusing a structure table
/// of rank `2g` and class at least 4.
pub fn rinf_degree_with_table(spec: &SurfaceSpec, opts: &DegreeOptions, table: StructureTable) -> Result<RinfVerdict> {
    spec.require_hyperbolic()?;
    if !spec.orientable {
        return nonorientable_degree(spec, opts);
    }
    if table.class() < 4 || table.order() != opts.order {
        return Err(Error::InvalidArgument("cached table must have class >= 4 and the requested Hall order".into()));
    }
    let lie = SurfaceLie::from_table(spec.genus, table)?;
    orientable_degree(spec, opts, &lie)
}

fn witness_determinants(lie: &SurfaceLie, s: &IntMatrix, up_to: usize) -> Result<Vec<DegreeDeterminant>> {
    let tower = lie.tower(s, up_to.max(1))?;
    let degrees: Vec<usize> = (1..=up_to.min(3)).collect();
    let dets = par::map(&degrees, |&i| lie.surface_det(&tower, i));
    let mut out = Vec::new();
    for (i, d) in degrees.into_iter().zip(dets) {
        out.push(DegreeDeterminant {
            degree: i,
            lattice: Lattice::SurfaceLie,
            det: Int(d?),
        });
    }
    if up_to >= 4 {
        out.push(DegreeDeterminant {
            degree: 4,
            lattice: Lattice::Metabelian,
            det: Int(lie.metabelian_det(&tower)?),
        });
    }
    Ok(out)
}

fn orientable_degree(spec: &SurfaceSpec, opts: &DegreeOptions, lie: &SurfaceLie) -> Result<RinfVerdict> {
    let g = spec.genus;
    let reach = opts.max_class.unwrap_or(4).min(4);
    let witness = orientable_witness(g);
    let determinants = witness_determinants(lie, &witness, reach)?;
    let first = determinants.iter().find(|d| d.det.0.is_zero()).map(|d| d.degree);
    let witness_ok = determinants.iter().filter(|d| d.degree <= 3).all(|d| !d.det.0.is_zero());
    let mut certificates = vec![Certificate {
        kind: CertificateKind::WitnessNotRinf,
        class: reach.min(3),
        holds: witness_ok,
        detail: format!(
            "S_g = diag([[1,2],[1,1]]) x {g}: det(I - M_i) != 0 on L_i(pi_g) for i <= {}",
            reach.min(3)
        ),
    }];

    let (records, stats) = if reach >= 4 {
        let plan = sample_plan(opts.seed, opts.samples);
        let records = par::map(&plan, |&(i, seed, sign)| sample_record(lie, i, seed, sign, opts.length))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let stats = SampleStats {
            count: records.len(),
            seed: opts.seed,
            length: opts.length,
            plus: records.iter().filter(|r| r.sign == Sign::Plus).count(),
            minus: records.iter().filter(|r| r.sign == Sign::Minus).count(),
            imaginary_subcase: records.iter().filter(|r| r.route == Route::ImaginarySubcase).count(),
            failures: records.iter().filter(|r| !r.passes).count(),
        };
        let witness_degree_four = determinants
            .iter()
            .any(|d| d.lattice == Lattice::Metabelian && d.det.0.is_zero());
        certificates.push(Certificate {
            kind: CertificateKind::StructuralRinf,
            class: 4,
            holds: witness_degree_four && stats.failures == 0,
            detail: format!(
                "eigenvalue one at degree <= 4 for S_g (metabelian degree 4) and for {} sampled admissible \
                 matrices ({} plus via root-one multiplicity on L_2, {} minus via metabelian degree 4 or the +-i subcase)",
                stats.count, stats.plus, stats.minus
            ),
        });
        (records, stats)
    } else {
        (Vec::new(), SampleStats::default())
    };

    let all_hold = certificates.iter().all(|c| c.holds);
    let degree = (reach >= 4 && all_hold).then_some(4);
    Ok(RinfVerdict {
        schema: SCHEMA_VERSION,
        surface: *spec,
        hall_order: opts.order,
        max_class: opts.max_class,
        degree,
        first_eigenvalue_one_degree: first,
        witness: Some(witness),
        determinants,
        nonorientable_witness: None,
        certificates,
        samples: stats,
        sample_records: records,
        claim: format!("orientable surface group of genus {g}: R-infinity nilpotency degree 4"),
        scope: SCOPE.into(),
    })
}

fn nonorientable_degree(spec: &SurfaceSpec, opts: &DegreeOptions) -> Result<RinfVerdict> {
    let g = spec.g();
    let target = 2 * g;
    let c = target - 1;
    let w = nonorientable_witness(g, c, opts.max_m.as_ref())?;
    let p = IntPoly::new(crate::json::bigints(w.charpoly.clone()));
    let det_i_minus_w = w.matrix.identity_minus()?.det()?;
    let mut certificates = vec![Certificate {
        kind: CertificateKind::WitnessNotRinf,
        class: c,
        holds: w.is_certified(),
        detail: format!(
            "W = L A^{} with m = {} (k = {}, f(2,{c}) = {}): det W = {}, one dominant real root, \
             no i-fold eigenvalue product equals 1 for i <= {c}",
            g - 1,
            w.m.0,
            w.k,
            w.f.0,
            w.det.0
        ),
    }];
    let explicit = product_spectrum_at_one(&p, g)?;
    let product_holds = product_criterion(&w.det.0) && explicit.as_ref().is_none_or(Zero::is_zero);
    certificates.push(Certificate {
        kind: CertificateKind::ProductCriterionRinf,
        class: target,
        holds: product_holds,
        detail: match explicit {
            Some(v) => format!(
                "(l_1 ... l_g)^2 = det^2 = 1 for every automorphism; on W the {target}-fold product spectrum at 1 is {v}"
            ),
            None => format!("(l_1 ... l_g)^2 = det^2 = 1 for every automorphism (det W = {})", w.det.0),
        },
    });
    let within = opts.max_class.is_none_or(|m| m >= target);
    let degree = (within && certificates.iter().all(|c| c.holds)).then_some(target as u32);
    Ok(RinfVerdict {
        schema: SCHEMA_VERSION,
        surface: *spec,
        hall_order: opts.order,
        max_class: opts.max_class,
        degree,
        first_eigenvalue_one_degree: product_holds.then_some(target),
        witness: Some(w.matrix.clone()),
        determinants: vec![DegreeDeterminant {
            degree: 1,
            lattice: Lattice::Abelian,
            det: Int(det_i_minus_w),
        }],
        nonorientable_witness: Some(w),
        certificates,
        samples: SampleStats {
            seed: opts.seed,
            ..SampleStats::default()
        },
        sample_records: Vec::new(),
        claim: format!("non-orientable surface group of genus {}: R-infinity nilpotency degree {target}", spec.genus),
        scope: SCOPE.into(),
    })
}

/// Recomputes every determinant, witness check and sample record of `v`.
pub fn verify_verdict(v: &RinfVerdict) -> Result<()> {
    v.surface.require_hyperbolic()?;
    if v.surface.orientable {
        let g = v.surface.genus;
        let lie = SurfaceLie::build(g, 4, v.hall_order)?;
        let witness = orientable_witness(g);
        if v.witness.as_ref() != Some(&witness) {
            return Err(Error::Verification("witness is not S_g".into()));
        }
        let reach = v.max_class.unwrap_or(4).min(4);
        if witness_determinants(&lie, &witness, reach)? != v.determinants {
            return Err(Error::Verification("witness determinants do not reproduce".into()));
        }
        let fresh = par::map(&v.sample_records, |r| {
            if admissibility(&r.matrix, g)?.sign() != Some(r.sign) {
                return Err(Error::Verification(format!("sample {} is not admissible with its sign", r.index)));
            }
            record_for(&lie, r.index, r.seed, r.sign, r.matrix.clone())
        });
        for (r, f) in v.sample_records.iter().zip(fresh) {
            if &f? != r {
                return Err(Error::Verification(format!("sample {} does not reproduce", r.index)));
            }
        }
    } else {
        let w = v
            .nonorientable_witness
            .as_ref()
            .ok_or_else(|| Error::Verification("missing non-orientable witness".into()))?;
        w.reverify()?;
        if w.g != v.surface.g() || w.class + 1 != 2 * w.g {
            return Err(Error::Verification("witness does not match the surface".into()));
        }
    }
    let all_hold = v.certificates.iter().all(|c| c.holds);
    if v.degree.is_some() && !all_hold {
        return Err(Error::Verification("degree claimed with a failing certificate".into()));
    }
    Ok(())
}

/// Per-matrix report for a single automorphism of `pi_g / gamma_{c+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub schema: u32,
    pub genus: usize,
    pub class: usize,
    pub hall_order: HallOrder,
    pub matrix: IntMatrix,
    pub admissibility: Admissibility,
    pub determinants: Vec<DegreeDeterminant>,
    pub first_eigenvalue_one_degree: Option<usize>,
    /// Whether `R(phi) = infinity` on the class-`c` quotient.
    pub reidemeister_infinite: bool,
    pub claim: String,
}

impl CheckReport {
    pub fn summary_line(&self) -> String {
        match self.first_eigenvalue_one_degree {
            Some(d) => format!("R infinite (degree {d})"),
            None => format!("R finite (no eigenvalue 1 through degree {})", self.class),
        }
    }
}

/// `det(I - M_i)` on `L_i(pi_g)` for `i <= class`, plus the metabelian
/// degree-4 determinant when `class >= 4`. Fails for non-admissible `s`.
pub fn check_automorphism(lie: &SurfaceLie, s: &IntMatrix, class: usize) -> Result<CheckReport> {
    let g = lie.g;
    let adm = admissibility(s, g)?;
    if adm == Admissibility::None {
        let why = admissibility_failure(s, g)?.unwrap_or_default();
        return Err(Error::InvalidArgument(format!("matrix is not admissible: {why}")));
    }
    if class == 0 || class > lie.class() {
        return Err(Error::InvalidArgument(format!(
            "class {class} outside 1..={} for this structure table",
            lie.class()
        )));
    }
    let tower = lie.tower(s, class)?;
    let degrees: Vec<usize> = (1..=class).collect();
    let dets = par::map(&degrees, |&i| lie.surface_det(&tower, i));
    let mut determinants = Vec::new();
    for (i, d) in degrees.into_iter().zip(dets) {
        determinants.push(DegreeDeterminant {
            degree: i,
            lattice: Lattice::SurfaceLie,
            det: Int(d?),
        });
    }
    if class >= 4 && lie.metabelian.is_some() {
        determinants.push(DegreeDeterminant {
            degree: 4,
            lattice: Lattice::Metabelian,
            det: Int(lie.metabelian_det(&tower)?),
        });
    }
    let first = determinants
        .iter()
        .filter(|d| d.lattice == Lattice::SurfaceLie && d.det.0.is_zero())
        .map(|d| d.degree)
        .min();
    Ok(CheckReport {
        schema: SCHEMA_VERSION,
        genus: g,
        class,
        hall_order: lie.table.order(),
        matrix: s.clone(),
        admissibility: adm,
        determinants,
        first_eigenvalue_one_degree: first,
        reidemeister_infinite: first.is_some(),
        claim: "R(phi) is infinite iff some M_i, i <= c, has eigenvalue 1".into(),
    })
}

/// Re-runs a check report from its matrix and class.
pub fn verify_check(report: &CheckReport) -> Result<()> {
    let lie = SurfaceLie::build(report.genus, report.class.max(4), report.hall_order)?;
    let fresh = check_automorphism(&lie, &report.matrix, report.class)?;
    if &fresh != report {
        return Err(Error::Verification("check report does not reproduce".into()));
    }
    Ok(())
}

/// The metabelian degree-4 detection (or the degree-2 multiplicity
/// argument for sign plus) succeeds for `S_g` and `samples` sampled
/// admissible matrices.
pub fn solvability_quotient_check(g: usize, samples: usize, seed: u64) -> Result<bool> {
    SurfaceSpec::orientable(g)?.require_hyperbolic()?;
    let lie = SurfaceLie::build(g, 4, HallOrder::Standard)?;
    let w = orientable_witness(g);
    let tower = lie.tower(&w, 4)?;
    if !lie.metabelian_det(&tower)?.is_zero() {
        return Ok(false);
    }
    let plan = sample_plan(seed, samples);
    let ok = par::map(&plan, |&(i, s, sign)| sample_record(&lie, i, s, sign, 6).map(|r| r.passes));
    for r in ok {
        if !r? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_two_orientable() {
        let spec = SurfaceSpec::orientable(2).unwrap();
        let opts = DegreeOptions {
            samples: 4,
            ..DegreeOptions::default()
        };
        let v = rinf_degree(&spec, &opts).unwrap();
        assert_eq!(v.degree, Some(4));
        assert_eq!(v.first_eigenvalue_one_degree, Some(4));
        assert_eq!(v.samples.failures, 0);
        verify_verdict(&v).unwrap();
    }

    #[test]
    fn class_three_stops_short() {
        let spec = SurfaceSpec::orientable(2).unwrap();
        let opts = DegreeOptions {
            max_class: Some(3),
            ..DegreeOptions::default()
        };
        let v = rinf_degree(&spec, &opts).unwrap();
        assert_eq!(v.degree, None);
        assert_eq!(v.first_eigenvalue_one_degree, None);
        assert_eq!(v.determinants.len(), 3);
    }

    #[test]
    fn genus_three_nonorientable() {
        let spec = SurfaceSpec::nonorientable(3).unwrap();
        let v = rinf_degree(&spec, &DegreeOptions::default()).unwrap();
        assert_eq!(v.degree, Some(4));
        verify_verdict(&v).unwrap();
    }

    #[test]
    fn torus_rejected() {
        let spec = SurfaceSpec::orientable(1).unwrap();
        assert!(rinf_degree(&spec, &DegreeOptions::default()).is_err());
    }

    #[test]
    fn check_reports() {
        let lie = SurfaceLie::build(2, 4, HallOrder::Standard).unwrap();
        let s2 = orientable_witness(2);
        let r3 = check_automorphism(&lie, &s2, 3).unwrap();
        assert_eq!(r3.summary_line(), "R finite (no eigenvalue 1 through degree 3)");
        let r4 = check_automorphism(&lie, &s2, 4).unwrap();
        assert_eq!(r4.summary_line(), "R infinite (degree 4)");
        let id = check_automorphism(&lie, &IntMatrix::identity(4), 4).unwrap();
        assert_eq!(id.summary_line(), "R infinite (degree 1)");
        let bad = IntMatrix::identity(4).scale(&BigInt::from(2));
        assert!(check_automorphism(&lie, &bad, 3).is_err());
    }
}
