use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rinf_algebra::analysis::{
    admissibility, analyze_sample, bigcondition_equivalence, nonorientable_witness, orientable_witness,
    rinf_degree, sample_admissible, sample_nonadmissible, Admissibility, DegreeOptions, Route, Sign, SurfaceLie,
    SurfaceSpec,
};
use rinf_algebra::lie::{build_hall_basis, HallOrder};
use rinf_algebra::linalg::{charpoly, kfold_product_spectrum, palindromic_check, resultant, IntPoly, Symmetry};

fn sign(minus: bool) -> Sign {
    if minus {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn samples_have_requested_sign(g in 2usize..=3, seed in any::<u64>(), minus in any::<bool>()) {
        let s = sample_admissible(g, sign(minus), seed, 8).unwrap();
        let expected = if minus { Admissibility::Minus } else { Admissibility::Plus };
        prop_assert_eq!(admissibility(&s, g).unwrap(), expected);
        prop_assert!(s.det().unwrap().magnitude().is_one());
    }

    #[test]
    fn bigcondition_on_admissible(g in 2usize..=3, seed in any::<u64>(), minus in any::<bool>()) {
        let t = build_hall_basis(2 * g, 2).unwrap();
        let s = sample_admissible(g, sign(minus), seed, 8).unwrap();
        prop_assert!(bigcondition_equivalence(&s, g, &t).unwrap());
    }

    #[test]
    fn bigcondition_on_nonadmissible(g in 2usize..=3, seed in any::<u64>()) {
        let t = build_hall_basis(2 * g, 2).unwrap();
        let s = sample_nonadmissible(g, seed, 8).unwrap();
        prop_assert_eq!(admissibility(&s, g).unwrap(), Admissibility::None);
        prop_assert!(bigcondition_equivalence(&s, g, &t).unwrap());
    }

    #[test]
    fn plus_samples_are_palindromic(g in 2usize..=3, seed in any::<u64>()) {
        let s = sample_admissible(g, Sign::Plus, seed, 8).unwrap();
        prop_assert_eq!(palindromic_check(&charpoly(&s).unwrap(), g).unwrap(), Symmetry::HoldsPlus);
    }
}

#[test]
fn case_one_multiplicity() {
    for g in 2..=3 {
        let lie = SurfaceLie::build(g, 2, HallOrder::Standard).unwrap();
        for seed in 0..12u64 {
            let s = sample_admissible(g, Sign::Plus, seed, 8).unwrap();
            let (route, _, mult) = analyze_sample(&lie, &s, Sign::Plus).unwrap();
            let mult = mult.unwrap();
            assert!(mult + 1 >= g, "g={g} seed={seed} multiplicity {mult}");
            assert_ne!(route, Route::Undetected);
        }
    }
}

#[test]
fn minus_samples_detected_by_degree_four() {
    let lie = SurfaceLie::build(2, 4, HallOrder::Standard).unwrap();
    for seed in 0..6u64 {
        let s = sample_admissible(2, Sign::Minus, seed, 6).unwrap();
        let (route, degree, _) = analyze_sample(&lie, &s, Sign::Minus).unwrap();
        assert_ne!(route, Route::Undetected, "seed={seed}");
        assert!(degree.unwrap() <= 4);
    }
}

#[test]
fn witness_is_minus_admissible() {
    for g in 2..=4 {
        assert_eq!(admissibility(&orientable_witness(g), g).unwrap(), Admissibility::Minus);
    }
}

#[test]
fn verdicts_stable_across_hall_orders() {
    let spec = SurfaceSpec::orientable(2).unwrap();
    let run = |order| {
        let opts = DegreeOptions {
            samples: 4,
            order,
            ..DegreeOptions::default()
        };
        rinf_degree(&spec, &opts).unwrap()
    };
    let (a, b) = (run(HallOrder::Standard), run(HallOrder::Reversed));
    assert_eq!(a.degree, b.degree);
    assert_eq!(a.first_eigenvalue_one_degree, b.first_eigenvalue_one_degree);
    let dets = |v: &rinf_algebra::analysis::RinfVerdict| v.determinants.iter().map(|d| d.det.0.clone()).collect::<Vec<_>>();
    assert_eq!(dets(&a), dets(&b));
    assert_eq!(a.samples.failures, b.samples.failures);
}

#[test]
fn nonorientable_witnesses_avoid_one() {
    for g in 2..=3 {
        let w = nonorientable_witness(g, 2 * g - 1, None).unwrap();
        assert_eq!(w.det.0, BigInt::from(-1));
        let p = charpoly(&w.matrix).unwrap();
        for i in 1..2 * g {
            let q = kfold_product_spectrum(&p, i).unwrap();
            let at_one = resultant(&q, &IntPoly::from_i64(&[-1, 1])).unwrap();
            assert!(!at_one.is_zero(), "g={g} i={i}");
        }
    }
}
