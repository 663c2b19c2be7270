//! Randomized algebraic invariants of the exact arithmetic layer.

use multizeta_core::cyclotomic::Cyclotomic;
use multizeta_core::rational::{rat, Rational};
use multizeta_core::series::PowerSeries;
use proptest::prelude::*;

fn arb_order() -> impl Strategy<Value = u64> {
    1u64..=24
}

fn arb_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn arb_cyclotomic(order: u64) -> impl Strategy<Value = Cyclotomic> {
    let phi = multizeta_core::cyclotomic::euler_phi(order) as usize;
    proptest::collection::vec((arb_rational(), 0..phi), 0..=3).prop_map(move |terms| {
        let mut acc = Cyclotomic::zero(order);
        for (c, i) in terms {
            let z = Cyclotomic::root_of_unity(order, i as i64).unwrap();
            acc = acc.add(&z.scale(&c));
        }
        acc
    })
}

fn arb_triple() -> impl Strategy<Value = (Cyclotomic, Cyclotomic, Cyclotomic)> {
    arb_order().prop_flat_map(|m| {
        (
            arb_cyclotomic(m),
            arb_cyclotomic(m),
            arb_cyclotomic(m),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms((x, y, z) in arb_triple()) {
        // associativity and commutativity of both operations
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        // distributivity
        prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
    }

    #[test]
    fn inverses_multiply_to_one((x, _, _) in arb_triple()) {
        prop_assume!(!x.is_zero());
        let inv = x.inv().unwrap();
        prop_assert!(x.mul(&inv).as_rational() == Some(Rational::from_integer(1.into())));
    }

    #[test]
    fn conjugation_is_an_involution((x, y, _) in arb_triple()) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.add(&y).conj(), x.conj().add(&y.conj()));
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
    }

    #[test]
    fn numeric_embedding_is_a_homomorphism((x, y, _) in arb_triple()) {
        let (sr, si, se) = x.add(&y).to_f64_pair();
        let (xr, xi, xe) = x.to_f64_pair();
        let (yr, yi, ye) = y.to_f64_pair();
        let tol = (xe + ye + se).max(1e-12);
        prop_assert!((sr - (xr + yr)).abs() <= tol);
        prop_assert!((si - (xi + yi)).abs() <= tol);

        let (pr, pi_, pe) = x.mul(&y).to_f64_pair();
        let scale = (xr.abs() + xi.abs() + yr.abs() + yi.abs()).max(1.0);
        let tol = (xe + ye + pe).max(1e-12) * scale;
        prop_assert!((pr - (xr * yr - xi * yi)).abs() <= tol);
        prop_assert!((pi_ - (xr * yi + xi * yr)).abs() <= tol);
    }

    #[test]
    fn series_exponential_inverts(
        coeffs in proptest::collection::vec(arb_rational(), 1..6)
    ) {
        // exp(a) * exp(-a) = 1 for series with zero constant term
        let t = coeffs.len();
        let mut a = vec![Cyclotomic::zero(1)];
        for c in &coeffs {
            a.push(Cyclotomic::from_rational(c.clone()));
        }
        let a = PowerSeries::from_coeffs(1, a).unwrap();
        let ea = a.exp().unwrap();
        let eminus = a.scale(&rat(-1, 1)).exp().unwrap();
        prop_assert_eq!(ea.mul(&eminus).unwrap(), PowerSeries::one(1, t));
    }

    #[test]
    fn series_inverse_round_trips(
        c0 in (1i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d)),
        rest in proptest::collection::vec(arb_rational(), 1..6)
    ) {
        let t = rest.len();
        let mut coeffs = vec![Cyclotomic::from_rational(c0)];
        for c in &rest {
            coeffs.push(Cyclotomic::from_rational(c.clone()));
        }
        let a = PowerSeries::from_coeffs(1, coeffs).unwrap();
        let inv = a.inv().unwrap();
        prop_assert_eq!(a.mul(&inv).unwrap(), PowerSeries::one(1, t));
    }
}
