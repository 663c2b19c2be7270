//! Cross-cutting integration checks: the two exact engines against each
//! other, against the single-value closed form, and against the numeric
//! oracle.

use multizeta_core::characters::{gauss_sum, kronecker_character, Character};
use multizeta_core::cyclotomic::Cyclotomic;
use multizeta_core::genfun_engine::eval_formula_ii;
use multizeta_core::oracle::{
    numeric_multiple_l_equal, Grouping, OracleConfig,
};
use multizeta_core::partition_engine::{convert_bullet_star, eval_formula_i};
use multizeta_core::rational::{factorial, rat_i, Rational};
use multizeta_core::sequences::gen_bernoulli;
use multizeta_core::{EvalRequest, Omega};

fn admissible_kappas(chi: &Character) -> Vec<u64> {
    let parity = chi.parity() as u64;
    (1..=4u64)
        .filter(|kappa| kappa % 2 == parity % 2)
        .filter(|&kappa| kappa > 1 || !chi.is_principal())
        .collect()
}

#[test]
fn engines_agree_on_small_grid() {
    // moduli 1..5, every admissible kappa <= 4, depths 1..2 (the full
    // grid to depth 3 runs in the acceptance suite)
    for modulus in 1..=5u64 {
        for chi in Character::characters_mod(modulus) {
            for kappa in admissible_kappas(&chi) {
                let k = (kappa as i64 - chi.parity() as i64) / 2;
                for d in 1..=2u64 {
                    let req =
                        EvalRequest::new(Omega::Bullet, d, k, chi.clone()).unwrap();
                    let a = eval_formula_i(&req).unwrap();
                    let b = eval_formula_ii(&req).unwrap();
                    assert!(
                        a.value_eq(&b),
                        "bullet N={modulus} chi={} kappa={kappa} d={d}: {a} vs {b}",
                        chi.label()
                    );
                    let req = EvalRequest::new(Omega::Star, d, k, chi.clone()).unwrap();
                    let a = eval_formula_i(&req).unwrap();
                    let b = eval_formula_ii(&req).unwrap();
                    assert!(
                        a.value_eq(&b),
                        "star N={modulus} chi={} kappa={kappa} d={d}: {a} vs {b}",
                        chi.label()
                    );
                }
            }
        }
    }
}

#[test]
fn depth_one_matches_classical_closed_form() {
    // At depth 1 the value is the Euler-factor correction times the
    // primitive single value assembled from the Gauss sum and a
    // generalized Bernoulli number.
    for modulus in 1..=6u64 {
        for chi in Character::characters_mod(modulus) {
            for kappa in admissible_kappas(&chi) {
                let k = (kappa as i64 - chi.parity() as i64) / 2;
                let req = EvalRequest::new(Omega::Bullet, 1, k, chi.clone()).unwrap();
                let engine = eval_formula_i(&req).unwrap();

                let prim = chi.primitive();
                let f = prim.modulus();
                // (-1)^{kappa/2 + 1 - e} tau/2 (2/f)^kappa B/(kappa)!
                let mut closed = gauss_sum(&prim);
                closed = closed.mul(&Cyclotomic::root_of_unity(4, kappa as i64).unwrap());
                closed = closed.scale(
                    &(multizeta_core::rational::sign_pow(1 + prim.parity() as u64)
                        * multizeta_core::rational::two_pow(kappa as i64 - 1)
                        * multizeta_core::rational::pow_i(&rat_i(f as i64), -(kappa as i64))
                        / Rational::from_integer(factorial(kappa))),
                );
                closed = closed.mul(&gen_bernoulli(kappa, &prim.conjugate()));
                closed = closed.mul(&multizeta_core::characters::euler_factor_alpha(
                    &chi, kappa,
                ));
                assert!(
                    engine.coefficient.value_eq(&closed),
                    "chi={} kappa={kappa}: {} vs {}",
                    chi.label(),
                    engine.coefficient,
                    closed
                );
            }
        }
    }
}

#[test]
fn oracle_agrees_with_engines_on_samples() {
    let cfg = OracleConfig {
        cutoff: 10_000,
        grouping: Grouping::None,
    };
    let chi5 = kronecker_character(5).unwrap();
    let chi4 = kronecker_character(-4).unwrap();
    let cases = vec![
        (Omega::Bullet, 2u64, 1i64, Character::principal(1)),
        (Omega::Star, 2, 1, Character::principal(1)),
        (Omega::Bullet, 1, 1, Character::principal(2)),
        (Omega::Star, 2, 1, Character::principal(3)),
        (Omega::Bullet, 2, 1, chi5.clone()),
        (Omega::Star, 1, 1, chi4.clone()),
    ];
    for (omega, d, k, chi) in cases {
        let req = EvalRequest::new(omega, d, k, chi.clone()).unwrap();
        let kappa = req.kappa();
        let exact = eval_formula_i(&req).unwrap();
        let (ex_re, ex_im) = exact.to_f64_pair();
        let numeric =
            numeric_multiple_l_equal(omega, kappa as f64, &chi, d, &cfg).unwrap();
        let (nu_re, nu_im) = numeric.value_f64();
        let dev = ((ex_re - nu_re).powi(2) + (ex_im - nu_im).powi(2)).sqrt();
        assert!(
            dev <= numeric.tail_bound + 1e-10,
            "omega={omega} d={d} k={k} chi={}: dev {dev} bound {}",
            chi.label(),
            numeric.tail_bound
        );
        assert!(numeric.tail_bound < 1e-6);
    }
}

#[test]
fn depth_one_anchors_with_surds() {
    // L(1) for the odd quadratic character mod 3: sqrt(3)/9 * pi
    let chi3 = kronecker_character(-3).unwrap();
    let v = eval_formula_i(&EvalRequest::new(Omega::Bullet, 1, 0, chi3).unwrap()).unwrap();
    assert_eq!(v.pi_exponent, 1);
    let expected = Cyclotomic::sqrt_int(3).scale(&multizeta_core::rational::rat(1, 9));
    assert!(v.coefficient.value_eq(&expected), "{} vs {}", v.coefficient, expected);

    // L(2) for the even quadratic character mod 5: 4 sqrt(5)/125 * pi^2
    let chi5 = kronecker_character(5).unwrap();
    let v = eval_formula_i(&EvalRequest::new(Omega::Bullet, 1, 1, chi5).unwrap()).unwrap();
    assert_eq!(v.pi_exponent, 2);
    let expected = Cyclotomic::sqrt_int(5).scale(&multizeta_core::rational::rat(4, 125));
    assert!(v.coefficient.value_eq(&expected), "{} vs {}", v.coefficient, expected);
}

#[test]
fn principal_and_real_coefficients_are_real() {
    // Structural reality: principal characters give rational coefficients
    // outright; real characters give coefficients fixed by conjugation
    // (the canonical form has zero imaginary part, though square roots of
    // the conductor can appear, e.g. at modulus 3 and argument 1).
    for modulus in 1..=6u64 {
        for chi in Character::characters_mod(modulus) {
            if !chi.is_real() {
                continue;
            }
            for kappa in admissible_kappas(&chi) {
                let k = (kappa as i64 - chi.parity() as i64) / 2;
                for d in 1..=2u64 {
                    for omega in [Omega::Bullet, Omega::Star] {
                        let req = EvalRequest::new(omega, d, k, chi.clone()).unwrap();
                        let v = eval_formula_i(&req).unwrap();
                        if chi.is_principal() {
                            assert!(
                                v.coefficient.as_rational().is_some(),
                                "chi={} kappa={kappa} d={d}: {}",
                                chi.label(),
                                v.coefficient
                            );
                        } else {
                            assert!(
                                v.coefficient.conj().value_eq(&v.coefficient),
                                "chi={} kappa={kappa} d={d}: {}",
                                chi.label(),
                                v.coefficient
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn conversion_round_trip_on_characters() {
    let chi4 = kronecker_character(-4).unwrap();
    for d in 1..=4u64 {
        let direct = eval_formula_i(
            &EvalRequest::new(Omega::Star, d, 0, chi4.clone()).unwrap(),
        )
        .unwrap();
        let converted = convert_bullet_star(d, |depth| {
            eval_formula_i(&EvalRequest::new(Omega::Bullet, depth, 0, chi4.clone()).unwrap())
        })
        .unwrap();
        assert!(converted.value_eq(&direct), "d={d}");
    }
}
