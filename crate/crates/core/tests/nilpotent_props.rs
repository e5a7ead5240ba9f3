use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rinf_algebra::nilpotent::{padding_in_subgroup, padding_word, power_padding, MalcevElement, NilpotentGroup};

fn element(g: &NilpotentGroup, raw: &[i64]) -> MalcevElement {
    g.element_i64(&raw[..g.hirsch_length()]).unwrap()
}

fn coords() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 32)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_laws(r in 2usize..=3, c in 1usize..=4, a in coords(), b in coords(), d in coords()) {
        let g = NilpotentGroup::new(r, c).unwrap();
        let (x, y, z) = (element(&g, &a), element(&g, &b), element(&g, &d));
        let e = g.identity();
        prop_assert_eq!(&g.multiply(&x, &e).unwrap(), &x);
        prop_assert_eq!(&g.multiply(&e, &x).unwrap(), &x);
        prop_assert!(g.multiply(&x, &g.inverse(&x).unwrap()).unwrap().is_identity());
        let left = g.multiply(&g.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = g.multiply(&x, &g.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn powers_add(a in coords(), m in -6i64..=6, n in -6i64..=6) {
        let g = NilpotentGroup::new(2, 4).unwrap();
        let x = element(&g, &a);
        let xm = g.power(&x, &BigInt::from(m)).unwrap();
        let xn = g.power(&x, &BigInt::from(n)).unwrap();
        prop_assert_eq!(g.multiply(&xm, &xn).unwrap(), g.power(&x, &BigInt::from(m + n)).unwrap());
    }

    #[test]
    fn root_of_power_roundtrips(r in 2usize..=3, c in 2usize..=3, a in coords(), s in 2u32..=3) {
        let g = NilpotentGroup::new(r, c).unwrap();
        let x = element(&g, &a);
        let u = g.power(&x, &BigInt::from(s)).unwrap();
        prop_assert_eq!(g.nth_root(&u, s).unwrap(), Some(x));
    }

    #[test]
    fn products_of_high_powers_have_roots(
        r in 2usize..=3,
        c in 2usize..=3,
        s in 2u32..=3,
        factors in prop::collection::vec(coords(), 1..4),
    ) {
        let g = NilpotentGroup::new(r, c).unwrap();
        let e = BigInt::from(s).pow(c as u32);
        let powers: Vec<_> = factors.iter().map(|a| g.power(&element(&g, a), &e).unwrap()).collect();
        let u = g.multiply_all(&powers).unwrap();
        let v = g.nth_root(&u, s).unwrap();
        prop_assert!(v.is_some());
        prop_assert_eq!(g.power(&v.unwrap(), &BigInt::from(s)).unwrap(), u);
    }

    #[test]
    fn padding_equation_holds(a in coords(), b in coords(), n in 2u32..=3) {
        let g = NilpotentGroup::new(2, 3).unwrap();
        let (x, y) = (element(&g, &a), element(&g, &b));
        let (f, z) = power_padding(&g, n, &x, &y).unwrap();
        let lhs = g.multiply(&g.power(&x, &BigInt::from(n)).unwrap(), &g.power(&y, &f).unwrap()).unwrap();
        let xz = g.multiply(&x, &z).unwrap();
        prop_assert_eq!(lhs, g.power(&xz, &BigInt::from(n)).unwrap());
        prop_assert!(padding_in_subgroup(&g, n, &f, &y, &z));
    }
}

#[test]
fn genus_level_square_roots() {
    for genus in 1..=3 {
        for c in 1..=3 {
            let g = NilpotentGroup::new(genus, c).unwrap();
            let u = g.generator_power_product(genus, &BigInt::from(1u32 << c)).unwrap();
            let d = g.nth_root(&u, 2).unwrap().unwrap_or_else(|| panic!("no root for g={genus} c={c}"));
            assert_eq!(g.power(&d, &BigInt::from(2)).unwrap(), u);
        }
    }
}

#[test]
fn square_root_in_n22() {
    // b2^2 b1^2 = b1^2 b2^2 [b2, b1]^4, so (b1^2 b2^2)^2 = b1^4 b2^4 [b2, b1]^4
    // and the root is b1^2 b2^2 [b2, b1]^-2; the sign of the last coordinate
    // depends on which of [b1, b2], [b2, b1] is the basic commutator
    let g = NilpotentGroup::new(2, 2).unwrap();
    let u = g.generator_power_product(2, &BigInt::from(4)).unwrap();
    let d = g.nth_root(&u, 2).unwrap().unwrap();
    assert_eq!(&d.coords[..2], &[BigInt::from(2), BigInt::from(2)]);
    assert_eq!(d.coords[2].magnitude(), BigInt::from(2).magnitude());
    assert_eq!(g.power(&d, &BigInt::from(2)).unwrap(), u);
}

#[test]
fn generators_have_no_proper_roots() {
    let g = NilpotentGroup::new(2, 3).unwrap();
    assert_eq!(g.nth_root(&g.generator(0), 2).unwrap(), None);
}

#[test]
fn padding_constant_for_squares_of_class_two() {
    let w = padding_word(2, 2).unwrap();
    assert_eq!(w.f, BigInt::from(4));
    assert!(!w.z.coords.iter().all(Zero::is_zero));
    assert!(w.f > BigInt::one());
}
