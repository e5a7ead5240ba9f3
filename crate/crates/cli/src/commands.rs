use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rinf_algebra::analysis::{
    admissibility, check_automorphism, nonorientable_witness, orientable_witness, rinf_degree,
    rinf_degree_with_table, sample_admissible, sample_nonadmissible, sample_plan, verify_check, verify_verdict,
    Admissibility, CheckReport, DegreeDeterminant, DegreeOptions, Lattice, NonorientableWitness, RinfVerdict,
    Sign, SurfaceLie, SurfaceSpec, SCHEMA_VERSION,
};
use rinf_algebra::json::Int;
use rinf_algebra::lie::{witt_dimension, HallOrder};
use rinf_algebra::linalg::{charpoly, IntMatrix, IntPoly};
use rinf_algebra::nilpotent::{power_padding, NilpotentGroup};
use rinf_algebra::oracle::{abelian_count_mod, brute_force_twisted_classes, spectrum_crosscheck, FiniteTwistedSetup};
use rinf_algebra::{Error, Result};
use serde::{Deserialize, Serialize};

use crate::{cache, Command, Format, RunArgs, SignArg};

/// Configuration echoed into every JSON document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub surface: Option<SurfaceSpec>,
    pub class: Option<usize>,
    pub samples: usize,
    pub seed: u64,
    pub length: usize,
    pub hall_order: HallOrder,
    pub max_m: Option<Int>,
    pub max_order: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Envelope<T> {
    pub schema: u32,
    pub command: String,
    pub config: RunConfig,
    pub result: T,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessResult {
    pub orientable: Option<CheckReport>,
    pub nonorientable: Option<NonorientableWitness>,
    pub certified: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct LieDims {
    rank: usize,
    class: usize,
    dims: Vec<Int>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Padding {
    rank: usize,
    class: usize,
    n: u32,
    f: Int,
    z: String,
    z_coords: Vec<Int>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct CrosscheckRow {
    index: usize,
    matrix: IntMatrix,
    /// `spectrum_holds[i - 1]` for degree `i`.
    spectrum_holds: Vec<bool>,
    twisted_classes: Option<u64>,
    abelian_classes: Option<Int>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct Crosscheck {
    rank: usize,
    class: usize,
    modulus: Option<u64>,
    rows: Vec<CrosscheckRow>,
    all_hold: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SampleRow {
    index: usize,
    seed: u64,
    matrix: IntMatrix,
    admissibility: Admissibility,
    charpoly: Vec<Int>,
}

fn config(run: &RunArgs, surface: Option<SurfaceSpec>) -> RunConfig {
    RunConfig {
        surface,
        class: run.class,
        samples: run.samples,
        seed: run.seed,
        length: run.length,
        hall_order: run.hall_order.into(),
        max_m: run.max_m.clone().map(Int),
        max_order: run.max_order,
    }
}

fn surface(run: &RunArgs) -> Result<SurfaceSpec> {
    let genus = run
        .genus
        .ok_or_else(|| Error::InvalidArgument("--genus is required".into()))?;
    if run.nonorientable {
        SurfaceSpec::nonorientable(genus)
    } else {
        SurfaceSpec::orientable(genus)
    }
}

fn emit<T: Serialize>(
    run: &RunArgs,
    command: &str,
    surface: Option<SurfaceSpec>,
    result: &T,
    text: impl FnOnce() -> String,
) -> Result<String> {
    match run.format {
        Format::Text => Ok(text()),
        Format::Json => {
            let env = Envelope {
                schema: SCHEMA_VERSION,
                command: command.to_string(),
                config: config(run, surface),
                result,
            };
            Ok(serde_json::to_string_pretty(&env)? + "\n")
        }
    }
}

pub fn run(command: &Command, run: &RunArgs) -> Result<String> {
    match command {
        Command::Degree => degree(run),
        Command::Check { matrix, certificate } => match (matrix, certificate) {
            (_, Some(path)) => verify_certificate(path),
            (Some(path), None) => check(run, path),
            (None, None) => Err(Error::InvalidArgument("check needs --matrix or --certificate".into())),
        },
        Command::Witness => witness(run),
        Command::LieDims { rank } => lie_dims(run, *rank),
        Command::Padding { rank, n } => padding(run, *rank, *n),
        Command::Crosscheck { rank, modulus } => crosscheck(run, *rank, *modulus),
        Command::Sample { sign } => sample(run, *sign),
    }
}

fn lattice_name(l: Lattice) -> &'static str {
    match l {
        Lattice::SurfaceLie => "L_i(pi_g)",
        Lattice::Metabelian => "metabelian L_4",
        Lattice::Abelian => "abelianization",
    }
}

fn write_determinants(out: &mut String, dets: &[DegreeDeterminant]) {
    for d in dets {
        let _ = writeln!(out, "  det(I - M_{}) on {} = {}", d.degree, lattice_name(d.lattice), d.det.0);
    }
}

fn degree_text(v: &RinfVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "surface: {}", v.surface.name());
    match v.degree {
        Some(d) => {
            let _ = writeln!(out, "degree: {d}");
        }
        None => {
            let _ = writeln!(out, "degree: not established");
        }
    }
    if let Some(w) = &v.witness {
        let _ = write!(out, "witness:\n{w}");
    }
    if let Some(nw) = &v.nonorientable_witness {
        let _ = writeln!(out, "witness parameter m = {} (k = {}, f = {})", nw.m.0, nw.k, nw.f.0);
    }
    let _ = writeln!(out, "determinants:");
    write_determinants(&mut out, &v.determinants);
    if let Some(d) = v.first_eigenvalue_one_degree {
        let _ = writeln!(out, "first eigenvalue-1 degree: {d}");
    }
    let s = &v.samples;
    let _ = writeln!(
        out,
        "samples: {} ({} plus, {} minus, {} with x^2+1 | charpoly), failures: {}, seed: {}",
        s.count, s.plus, s.minus, s.imaginary_subcase, s.failures, s.seed
    );
    for c in &v.certificates {
        let status = if c.holds { "holds" } else { "FAILS" };
        let kind = serde_json::to_value(c.kind).ok().and_then(|k| k.as_str().map(String::from)).unwrap_or_default();
        let _ = writeln!(out, "certificate {kind} (class {}): {status}\n  {}", c.class, c.detail);
    }
    let _ = writeln!(out, "claim: {}", v.claim);
    let _ = writeln!(out, "scope: {}", v.scope);
    out
}

fn degree(run: &RunArgs) -> Result<String> {
    let spec = surface(run)?;
    spec.require_hyperbolic()?;
    let order: HallOrder = run.hall_order.into();
    let opts = DegreeOptions {
        max_class: run.class,
        samples: run.samples,
        seed: run.seed,
        length: run.length,
        order,
        max_m: run.max_m.clone(),
    };
    let v = if spec.orientable {
        let table = cache::table(run.cache_dir.as_deref(), 2 * spec.genus, 4, order)?;
        rinf_degree_with_table(&spec, &opts, table)?
    } else {
        rinf_degree(&spec, &opts)?
    };
    emit(run, "degree", Some(spec), &v, || degree_text(&v))
}

/// JSON `{"rows", "cols", "entries"}`, a bare JSON array of rows, or the
/// `rows cols` text format.
fn read_matrix(path: &Path) -> Result<IntMatrix> {
    let text = fs::read_to_string(path)?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return Ok(serde_json::from_str(&text)?);
    }
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<Int>> = serde_json::from_str(&text)?;
        let cols = rows.first().map_or(0, Vec::len);
        let rows = rows.into_iter().map(rinf_algebra::json::bigints).collect();
        return IntMatrix::from_rows(rows, cols);
    }
    IntMatrix::from_text(&text)
}

fn surface_lie(run: &RunArgs, g: usize, class: usize) -> Result<SurfaceLie> {
    let table = cache::table(run.cache_dir.as_deref(), 2 * g, class.max(4), run.hall_order.into())?;
    SurfaceLie::from_table(g, table)
}

fn check_text(r: &CheckReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "genus {} class {}, admissibility {:?}", r.genus, r.class, r.admissibility);
    write_determinants(&mut out, &r.determinants);
    let _ = writeln!(out, "{}", r.summary_line());
    out
}

fn check(run: &RunArgs, path: &Path) -> Result<String> {
    if run.nonorientable {
        return Err(Error::InvalidArgument(
            "check takes automorphisms of orientable surfaces; use `witness --nonorientable` for N_g".into(),
        ));
    }
    let s = read_matrix(path)?;
    if !s.is_square() || s.rows() % 2 != 0 || s.rows() == 0 {
        return Err(Error::InvalidArgument(format!("expected a 2g x 2g matrix, got {}x{}", s.rows(), s.cols())));
    }
    let g = run.genus.unwrap_or(s.rows() / 2);
    let spec = SurfaceSpec::orientable(g)?;
    spec.require_hyperbolic()?;
    if s.rows() != 2 * g {
        return Err(Error::InvalidArgument(format!("genus {g} needs a {0}x{0} matrix", 2 * g)));
    }
    let class = run.class.unwrap_or(4);
    let lie = surface_lie(run, g, class)?;
    let report = check_automorphism(&lie, &s, class)?;
    emit(run, "check", Some(spec), &report, || check_text(&report))
}

fn verify_certificate(path: &Path) -> Result<String> {
    let env: Envelope<serde_json::Value> = serde_json::from_str(&fs::read_to_string(path)?)?;
    if env.schema != SCHEMA_VERSION {
        return Err(Error::Verification(format!("schema {} != {SCHEMA_VERSION}", env.schema)));
    }
    let line = match env.command.as_str() {
        "degree" => {
            let v: RinfVerdict = serde_json::from_value(env.result)?;
            verify_verdict(&v)?;
            match v.degree {
                Some(d) => format!("degree {d} for {}", v.surface.name()),
                None => format!("no degree claim for {}", v.surface.name()),
            }
        }
        "check" => {
            let r: CheckReport = serde_json::from_value(env.result)?;
            verify_check(&r)?;
            r.summary_line()
        }
        "witness" => {
            let w: WitnessResult = serde_json::from_value(env.result)?;
            if let Some(r) = &w.orientable {
                verify_check(r)?;
            }
            if let Some(nw) = &w.nonorientable {
                nw.reverify()?;
            }
            if w.orientable.is_none() && w.nonorientable.is_none() {
                return Err(Error::Verification("witness certificate is empty".into()));
            }
            "witness".to_string()
        }
        other => return Err(Error::Verification(format!("`{other}` output carries no certificate"))),
    };
    Ok(format!("certificate verified: {line}\n"))
}

fn witness(run: &RunArgs) -> Result<String> {
    let spec = surface(run)?;
    spec.require_hyperbolic()?;
    let result = if spec.orientable {
        let class = run.class.unwrap_or(4);
        let lie = surface_lie(run, spec.genus, class)?;
        let report = check_automorphism(&lie, &orientable_witness(spec.genus), class)?;
        WitnessResult {
            orientable: Some(report),
            nonorientable: None,
            certified: true,
        }
    } else {
        let g = spec.g();
        let class = run.class.unwrap_or(2 * g - 1);
        let w = nonorientable_witness(g, class, run.max_m.as_ref())?;
        WitnessResult {
            orientable: None,
            certified: w.is_certified(),
            nonorientable: Some(w),
        }
    };
    emit(run, "witness", Some(spec), &result, || {
        let mut out = String::new();
        if let Some(r) = &result.orientable {
            let _ = write!(out, "witness S_{}:\n{}", r.genus, r.matrix);
            out.push_str(&check_text(r));
        }
        if let Some(w) = &result.nonorientable {
            let p = IntPoly::new(rinf_algebra::json::bigints(w.charpoly.clone()));
            let _ = write!(out, "witness W = L A^{} on Z^{}:\n{}", w.g - 1, w.g, w.matrix);
            let _ = writeln!(out, "m = {} (k = {}, f(2,{}) = {})", w.m.0, w.k, w.class, w.f.0);
            let _ = writeln!(out, "charpoly: {p}");
            let _ = writeln!(out, "det: {}", w.det.0);
            let _ = writeln!(out, "dominance: {}", w.dominance);
            for (i, ok) in w.kfold_checks.iter().enumerate() {
                let _ = writeln!(out, "  no {}-fold eigenvalue product equals 1: {ok}", i + 1);
            }
            let _ = writeln!(out, "certificate: {}", if w.is_certified() { "holds" } else { "FAILS" });
        }
        out
    })
}

fn lie_dims(run: &RunArgs, rank: usize) -> Result<String> {
    let class = run
        .class
        .ok_or_else(|| Error::InvalidArgument("--class is required".into()))?;
    if rank == 0 || class == 0 {
        return Err(Error::InvalidArgument("rank and class must be positive".into()));
    }
    let dims: Vec<BigInt> = (1..=class).map(|n| witt_dimension(rank, n)).collect();
    let result = LieDims {
        rank,
        class,
        dims: dims.iter().cloned().map(Int).collect(),
    };
    emit(run, "lie-dims", None, &result, || {
        let d: Vec<String> = dims.iter().map(ToString::to_string).collect();
        format!("[{}]\n", d.join(","))
    })
}

fn generator_name(rank: usize) -> impl Fn(usize) -> String {
    move |i| {
        if rank <= 3 {
            ["a", "b", "c"][i].to_string()
        } else {
            format!("a{}", i + 1)
        }
    }
}

fn padding(run: &RunArgs, rank: usize, n: u32) -> Result<String> {
    let class = run.class.unwrap_or(2);
    if rank < 2 {
        return Err(Error::InvalidArgument("padding needs rank >= 2".into()));
    }
    let group = NilpotentGroup::new(rank, class)?;
    let (f, z) = power_padding(&group, n, &group.generator(0), &group.generator(1))?;
    let names = generator_name(rank);
    let result = Padding {
        rank,
        class,
        n,
        f: Int(f.clone()),
        z: group.render(&z, &names),
        z_coords: z.coords.iter().cloned().map(Int).collect(),
    };
    emit(run, "padding", None, &result, || {
        format!(
            "a^{n} b^f = (a z)^{n} in N({rank},{class})\nf={}\nz = {}\n",
            result.f.0, result.z
        )
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let data = (0..n * n).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
    IntMatrix::new(n, n, data).expect("square")
}

fn crosscheck(run: &RunArgs, rank: usize, modulus: Option<u64>) -> Result<String> {
    let class = run.class.unwrap_or(3);
    if rank == 0 || class == 0 {
        return Err(Error::InvalidArgument("rank and class must be positive".into()));
    }
    let table = cache::table(run.cache_dir.as_deref(), rank, class, run.hall_order.into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(run.seed);
    let mut rows = Vec::with_capacity(run.samples);
    for index in 0..run.samples {
        let m = random_matrix(&mut rng, rank);
        let spectrum_holds = (1..=class)
            .map(|i| spectrum_crosscheck(&m, &table, i))
            .collect::<Result<Vec<_>>>()?;
        let (twisted_classes, abelian_classes) = match modulus {
            Some(md) => {
                let setup = FiniteTwistedSetup::from_matrix(md, class, &m, run.max_order)?;
                (Some(brute_force_twisted_classes(&setup)?), Some(Int(abelian_count_mod(&m, md)?)))
            }
            None => (None, None),
        };
        rows.push(CrosscheckRow {
            index,
            matrix: m,
            spectrum_holds,
            twisted_classes,
            abelian_classes,
        });
    }
    // on Z/m^n the two counts must coincide; in higher class the twisted
    // count can only be larger
    let counts_ok = |r: &CrosscheckRow| match (&r.twisted_classes, &r.abelian_classes) {
        (Some(t), Some(a)) if class == 1 => BigInt::from(*t) == a.0,
        (Some(t), Some(a)) => BigInt::from(*t) >= a.0,
        _ => true,
    };
    let all_hold = rows.iter().all(|r| r.spectrum_holds.iter().all(|&b| b) && counts_ok(r));
    let result = Crosscheck {
        rank,
        class,
        modulus,
        rows,
        all_hold,
    };
    let out = emit(run, "crosscheck", None, &result, || {
        let mut out = String::new();
        for r in &result.rows {
            let flags: Vec<&str> = r.spectrum_holds.iter().map(|&b| if b { "ok" } else { "FAIL" }).collect();
            let _ = write!(out, "sample {}: spectrum [{}]", r.index, flags.join(" "));
            if let (Some(t), Some(a)) = (&r.twisted_classes, &r.abelian_classes) {
                let _ = write!(out, ", twisted classes {t}, abelian {}", a.0);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{}", if result.all_hold { "all checks hold" } else { "CHECK FAILED" });
        out
    })?;
    if !result.all_hold {
        print!("{out}");
        return Err(Error::Verification("crosscheck found a disagreement".into()));
    }
    Ok(out)
}

fn sample(run: &RunArgs, sign: Option<SignArg>) -> Result<String> {
    let genus = run
        .genus
        .ok_or_else(|| Error::InvalidArgument("--genus is required".into()))?;
    if genus == 0 {
        return Err(Error::InvalidArgument("genus must be at least 1".into()));
    }
    let mut rows = Vec::with_capacity(run.samples);
    for (index, seed, planned) in sample_plan(run.seed, run.samples) {
        let matrix = match sign {
            Some(SignArg::None) => sample_nonadmissible(genus, seed, run.length)?,
            Some(SignArg::Plus) => sample_admissible(genus, Sign::Plus, seed, run.length)?,
            Some(SignArg::Minus) => sample_admissible(genus, Sign::Minus, seed, run.length)?,
            None => sample_admissible(genus, planned, seed, run.length)?,
        };
        rows.push(SampleRow {
            index,
            seed,
            admissibility: admissibility(&matrix, genus)?,
            charpoly: rinf_algebra::json::ints(charpoly(&matrix)?.coeffs()),
            matrix,
        });
    }
    let spec = SurfaceSpec::orientable(genus)?;
    emit(run, "sample", Some(spec), &rows, || {
        let mut out = String::new();
        for r in &rows {
            let p = IntPoly::new(rinf_algebra::json::bigints(r.charpoly.clone()));
            let _ = write!(
                out,
                "sample {} (seed {}, {:?}):\n{}charpoly: {p}\n",
                r.index, r.seed, r.admissibility, r.matrix
            );
        }
        out
    })
}
