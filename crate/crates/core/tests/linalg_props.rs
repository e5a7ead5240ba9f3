use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rinf_algebra::linalg::{
    charpoly, kfold_product_spectrum, kfold_value_at_one_is_nonzero, product_spectrum, resultant,
    smith_normal_form, IntMatrix, IntPoly,
};

fn matrix(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec(lo..=hi, n * n).prop_map(move |v| {
        IntMatrix::new(n, n, v.into_iter().map(BigInt::from).collect()).unwrap()
    })
}

fn rect(max: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max, 1..=max).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Unimodular `U` and its inverse from a list of elementary row operations.
fn unimodular(n: usize, ops: &[(usize, usize, i64)]) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut u_inv = IntMatrix::identity(n);
    for &(i, j, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = IntMatrix::identity(n);
        e.set(i, j, BigInt::from(k));
        let mut e_inv = IntMatrix::identity(n);
        e_inv.set(i, j, BigInt::from(-k));
        u = e.checked_mul(&u).unwrap();
        u_inv = u_inv.checked_mul(&e_inv).unwrap();
    }
    (u, u_inv)
}

fn kron(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (ra, ca, rb, cb) = (a.rows(), a.cols(), b.rows(), b.cols());
    IntMatrix::from_fn(ra * rb, ca * cb, |i, j| a.get(i / rb, j / cb) * b.get(i % rb, j % cb))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn charpoly_is_conjugation_invariant(
        a in (2usize..=5).prop_flat_map(|n| matrix(n, -6, 6)),
        ops in prop::collection::vec((0usize..5, 0usize..5, -3i64..=3), 0..8),
    ) {
        let (u, u_inv) = unimodular(a.rows(), &ops);
        prop_assert!(u.checked_mul(&u_inv).unwrap().is_identity());
        let b = u.checked_mul(&a).unwrap().checked_mul(&u_inv).unwrap();
        prop_assert_eq!(charpoly(&a).unwrap(), charpoly(&b).unwrap());
    }

    #[test]
    fn charpoly_constant_term_is_signed_det(a in (1usize..=5).prop_flat_map(|n| matrix(n, -9, 9))) {
        let p = charpoly(&a).unwrap();
        let n = a.rows();
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        prop_assert_eq!(p.coeff(0), sign * a.det().unwrap());
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(n));
        prop_assert_eq!(p.eval(&BigInt::one()), a.identity_minus().unwrap().det().unwrap());
    }

    #[test]
    fn unimodular_charpoly_has_unit_constant(ops in prop::collection::vec((0usize..4, 0usize..4, -4i64..=4), 1..10)) {
        let (u, _) = unimodular(4, &ops);
        let p = charpoly(&u).unwrap();
        prop_assert!(p.coeff(0).abs().is_one());
    }

    #[test]
    fn product_spectrum_matches_kronecker(a in (1usize..=3).prop_flat_map(|n| matrix(n, -4, 4)),
                                          b in (1usize..=3).prop_flat_map(|n| matrix(n, -4, 4))) {
        let (p, q) = (charpoly(&a).unwrap(), charpoly(&b).unwrap());
        let pq = product_spectrum(&p, &q).unwrap();
        prop_assert_eq!(&pq, &product_spectrum(&q, &p).unwrap());
        prop_assert_eq!(pq.degree(), Some(a.rows() * b.rows()));
        prop_assert_eq!(pq, charpoly(&kron(&a, &b)).unwrap());
    }

    #[test]
    fn kfold_matches_tensor_power(a in (1usize..=2).prop_flat_map(|n| matrix(n, -3, 3)), i in 1usize..=4) {
        let p = charpoly(&a).unwrap();
        let mut t = a.clone();
        for _ in 1..i {
            t = kron(&t, &a);
        }
        let k = kfold_product_spectrum(&p, i).unwrap();
        prop_assert_eq!(&k, &charpoly(&t).unwrap());
        // value at 1 against the Sylvester resultant with x - 1
        let res = resultant(&k, &IntPoly::from_i64(&[-1, 1])).unwrap();
        prop_assert_eq!(kfold_value_at_one_is_nonzero(&p, i).unwrap(), !res.is_zero());
    }

    #[test]
    fn smith_reconstructs(m in rect(8, 50)) {
        let s = smith_normal_form(&m).unwrap();
        prop_assert_eq!(s.u.checked_mul(&m).unwrap().checked_mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(s.u.checked_mul(&s.u_inv).unwrap().is_identity());
        prop_assert!(s.u.det().unwrap().abs().is_one());
        prop_assert!(s.v.det().unwrap().abs().is_one());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    prop_assert!(s.d.get(i, j).is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            prop_assert!(!w[0].is_negative());
            if !w[0].is_zero() {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        prop_assert_eq!(s.rank(), m.rank());
    }

    #[test]
    fn square_cokernel_order_is_abs_det(m in (1usize..=5).prop_flat_map(|n| matrix(n, -20, 20))) {
        let s = smith_normal_form(&m).unwrap();
        let det = m.det().unwrap();
        match s.cokernel_order() {
            Some(c) => prop_assert_eq!(c, det.abs()),
            None => prop_assert!(det.is_zero()),
        }
    }
}

#[test]
fn squared_silver_ratio_spectrum() {
    // roots (1 +- sqrt 2)^2 = 3 +- 2 sqrt 2 and (1 + sqrt 2)(1 - sqrt 2) = -1 twice
    let p = IntPoly::from_i64(&[-1, -2, 1]);
    let expected = &IntPoly::from_i64(&[1, -6, 1]) * &IntPoly::from_i64(&[1, 1]).pow(2);
    assert_eq!(product_spectrum(&p, &p).unwrap(), expected);
    assert_eq!(expected, IntPoly::from_i64(&[1, -4, -10, -4, 1]));
}
