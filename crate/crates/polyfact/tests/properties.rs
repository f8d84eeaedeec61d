//! Randomized invariants checked with proptest.

use num_bigint::BigUint;
use proptest::prelude::*;

use polyfact::divisors::{
    brute_divisor_count, degree_spectrum, factorize, phi, phi_constrained, Profile,
};
use polyfact::field::FieldSpec;
use polyfact::irred::IrreducibleIndex;
use polyfact::poly::{self, Poly};
use polyfact::tail::omega;

fn monic(q: u64, max_degree: usize) -> impl Strategy<Value = (FieldSpec, Poly)> {
    (0..=max_degree)
        .prop_flat_map(move |deg| proptest::collection::vec(0..q, deg))
        .prop_map(move |mut coeffs| {
            coeffs.push(1);
            (FieldSpec::parse(&format!("{q}^1")).unwrap(), Poly::from_coeffs(coeffs))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_matches_divisor_census((field, s) in monic(2, 8)) {
        let index = IrreducibleIndex::materialize(&field, 4);
        let fac = factorize(&field, &index, &s).unwrap();
        prop_assert_eq!(phi(&fac), brute_divisor_count(&field, &s).unwrap());
    }

    #[test]
    fn spectrum_total_is_phi((field, s) in monic(3, 6), r0 in 0u32..4) {
        let index = IrreducibleIndex::materialize(&field, 3);
        let fac = factorize(&field, &index, &s).unwrap();
        let spectrum = degree_spectrum(&fac, r0);
        prop_assert_eq!(spectrum.total(), phi(&fac) * BigUint::from(r0 + 1));
    }

    #[test]
    fn phi_bounded_by_two_to_omega((field, s) in monic(2, 10)) {
        let index = IrreducibleIndex::materialize(&field, 5);
        let fac = factorize(&field, &index, &s).unwrap();
        prop_assert!(phi(&fac) <= BigUint::from(2u32).pow(omega(&fac) as u32));
    }

    #[test]
    fn phi_constrained_is_symmetric((field, s) in monic(3, 8), n in 0usize..6, np in 0usize..6) {
        prop_assume!(s.degree().unwrap() <= n + np);
        let index = IrreducibleIndex::materialize(&field, 4);
        let fac = factorize(&field, &index, &s).unwrap();
        prop_assert_eq!(
            phi_constrained(&fac, n, np).unwrap(),
            phi_constrained(&fac, np, n).unwrap()
        );
    }

    #[test]
    fn factorization_product_roundtrip((field, s) in monic(3, 8)) {
        let index = IrreducibleIndex::materialize(&field, 4);
        let fac = factorize(&field, &index, &s).unwrap();
        prop_assert_eq!(fac.product(&field), s);
    }

    #[test]
    fn poly_text_roundtrip((field, s) in monic(3, 8)) {
        prop_assert_eq!(Poly::parse(&field, &s.text()).unwrap(), s);
    }

    #[test]
    fn profile_text_roundtrip((field, s) in monic(2, 8), r0 in 0u32..4) {
        let index = IrreducibleIndex::materialize(&field, 4);
        let fac = factorize(&field, &index, &s).unwrap();
        let profile = Profile::from_factorization(&fac, r0);
        prop_assert_eq!(Profile::parse(&profile.text()).unwrap(), profile);
    }

    #[test]
    fn gcd_divides_both((field, a) in monic(2, 6), b in proptest::collection::vec(0..2u64, 0..6)) {
        let mut b = b;
        b.push(1);
        let b = Poly::from_coeffs(b);
        let g = poly::gcd(&field, &a, &b).unwrap();
        prop_assert!(poly::divides(&field, &g, &a).unwrap());
        prop_assert!(poly::divides(&field, &g, &b).unwrap());
    }
}
