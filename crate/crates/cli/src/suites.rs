//! Executable identity suites: the summation identities for Bernoulli and
//! Euler numbers, the closed-form value tables, and the cross-validation
//! grid (engine vs engine, engine vs numeric oracle, central values,
//! q-deformation, alternating and higher-rank families).

use multizeta_core::central::{central_closed_form_n1, central_value, CentralRequest};
use multizeta_core::characters::{kronecker_character, Character};
use multizeta_core::cyclotomic::Cyclotomic;
use multizeta_core::genfun_engine::{
    a_chi_minus4_closed, a_coeff, a_coeff_counted, c_constant, eval_alternating_genfun,
    eval_formula_ii, product_identity_check,
};
use multizeta_core::oracle::{
    alternating_ones_closed_form, numeric_alternating, numeric_higher_rank,
    numeric_multiple_l_equal, verify_q_l_identity, Grouping, OracleConfig, PeriodicFn, RankSpec,
};
use multizeta_core::partition_engine::{
    chi4_partition_sum, convert_bullet_star, eval_alternating_even, eval_formula_i,
    eval_higher_rank, formula_i_partition_sum,
};
use multizeta_core::partitions::{compositions, multinomial, partition_constants, partitions_of};
use multizeta_core::rational::{
    factorial, format_rational, rat, rat_i, sign_pow, two_pow, Rational,
};
use multizeta_core::sequences::{bernoulli, euler_number, euler_poly, lucas, sum_s, sum_t};
use multizeta_core::{EvalRequest, Omega, PiMultiple};

use crate::report::{run_cases, CaseResult, Job, SuiteReport};

const OMEGAS: [Omega; 2] = [Omega::Bullet, Omega::Star];

/// (kappa, k) pairs with matching parity, kappa >= 1, skipping the
/// divergent principal kappa = 1 case.
fn admissible(chi: &Character, kappamax: u64) -> Vec<(u64, i64)> {
    let parity = chi.parity() as u64;
    (1..=kappamax)
        .filter(|kappa| kappa % 2 == parity)
        .filter(|&kappa| kappa > 1 || !chi.is_principal())
        .map(|kappa| (kappa, (kappa as i64 - chi.parity() as i64) / 2))
        .collect()
}

fn exact_case(id: String, lhs: &Cyclotomic, rhs: &Cyclotomic) -> CaseResult {
    CaseResult::exact(id, lhs.value_eq(rhs), lhs.to_string(), rhs.to_string())
}

fn exact_pi_case(id: String, lhs: &PiMultiple, rhs: &PiMultiple) -> CaseResult {
    CaseResult::exact(id, lhs.value_eq(rhs), lhs.to_string(), rhs.to_string())
}

fn rational_case(id: String, lhs: &Rational, rhs: &Rational) -> CaseResult {
    CaseResult::exact(
        id,
        lhs == rhs,
        format_rational(lhs),
        format_rational(rhs),
    )
}

/// The master identity: the partition sum times zeta_4^{kd} 2^{kd} equals
/// C * A from the generating-function side.
fn sum_formula_case(omega: Omega, d: u64, k: i64, chi: &Character) -> CaseResult {
    let id = format!(
        "identities:master:omega={omega}:chi={}:k={k}:d={d}",
        chi.label()
    );
    let run = || -> multizeta_core::Result<CaseResult> {
        let req = EvalRequest::new(omega, d, k, chi.clone())?;
        let kappa = req.kappa();
        let sum = formula_i_partition_sum(&req)?;
        let lhs = sum
            .mul(&Cyclotomic::root_of_unity(4, (kappa * d) as i64)?)
            .scale(&two_pow((kappa * d) as i64));
        let rhs = c_constant(omega, d, k, chi)?.mul(&a_coeff(omega, k, chi, kappa * d)?);
        Ok(exact_case(id.clone(), &lhs, &rhs))
    };
    run().unwrap_or_else(|e| CaseResult::error(id, e))
}

pub fn suite_identities(kmax: u64, dmax: u64) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();

    // master identity on the cross-validation grid
    for modulus in 1..=7u64 {
        for chi in Character::characters_mod(modulus) {
            for (_, k) in admissible(&chi, 4) {
                for d in 1..=dmax.min(3) {
                    for omega in OMEGAS {
                        let chi = chi.clone();
                        jobs.push(Box::new(move || sum_formula_case(omega, d, k, &chi)));
                    }
                }
            }
        }
    }

    // B_{2k} from the odd-multinomial sum (trivial character side)
    for k in 1..=kmax.min(6) {
        jobs.push(Box::new(move || {
            let id = format!("identities:bernoulli-multinomial-a:k={k}");
            let one = Character::principal(1);
            match a_coeff(Omega::Bullet, k as i64, &one, 2 * k) {
                Ok(a) => match a.as_rational() {
                    Some(r) => {
                        let lhs = bernoulli(2 * k);
                        let rhs = Rational::from_integer(factorial(2 * k))
                            / (two_pow(2 * k as i64 - 1)
                                * Rational::from_integer(factorial(3 * k)))
                            * r;
                        rational_case(id, &lhs, &rhs)
                    }
                    None => CaseResult::error(id, "sum is not rational"),
                },
                Err(e) => CaseResult::error(id, e),
            }
        }));
    }

    // B_{2k} from the even-multinomial sum (odd-index character side)
    for k in 1..=kmax.min(6) {
        jobs.push(Box::new(move || {
            let id = format!("identities:bernoulli-multinomial-b:k={k}");
            let chi = Character::principal(2);
            match a_coeff(Omega::Bullet, k as i64, &chi, 2 * k) {
                Ok(a) => match a.as_rational() {
                    Some(r) => {
                        let lhs = bernoulli(2 * k);
                        let rhs = r / (two_pow(2 * k as i64 - 1)
                            * (two_pow(2 * k as i64) - rat_i(1)));
                        rational_case(id, &lhs, &rhs)
                    }
                    None => CaseResult::error(id, "sum is not rational"),
                },
                Err(e) => CaseResult::error(id, e),
            }
        }));
    }

    // B_{2d} and E_{2d} as partition sums over products of Bernoulli numbers
    for d in 1..=dmax.min(8) {
        jobs.push(Box::new(move || {
            let id = format!("identities:bernoulli-partition:d={d}");
            let mut sum = Rational::from_integer(0.into());
            for mu in partitions_of(d) {
                let consts = partition_constants(&mu);
                let mut term = Rational::new(1.into(), consts.z.clone());
                term *= sign_pow(consts.length);
                term /= two_pow(consts.length as i64);
                for &part in mu.parts() {
                    term *= bernoulli(2 * part);
                    term /= Rational::from_integer(factorial(2 * part));
                }
                sum += term;
            }
            let rhs = -two_pow(2 * d as i64) * Rational::from_integer(factorial(2 * d))
                / (two_pow(2 * d as i64) - rat_i(2))
                * sum;
            rational_case(id, &bernoulli(2 * d), &rhs)
        }));
        jobs.push(Box::new(move || {
            let id = format!("identities:euler-partition:d={d}");
            let mut sum = Rational::from_integer(0.into());
            for mu in partitions_of(d) {
                let consts = partition_constants(&mu);
                let mut term = Rational::new(1.into(), consts.z.clone());
                term *= sign_pow(consts.length);
                term /= two_pow(consts.length as i64);
                for &part in mu.parts() {
                    term *= two_pow(2 * part as i64) - rat_i(1);
                    term *= bernoulli(2 * part);
                    term /= Rational::from_integer(factorial(2 * part));
                }
                sum += term;
            }
            let rhs = two_pow(2 * d as i64) * Rational::from_integer(factorial(2 * d)) * sum;
            rational_case(
                id,
                &Rational::from_integer(euler_number(2 * d)),
                &rhs,
            )
        }));
    }

    // E_{2k} from the signed multinomial sum with (2k+1)-th roots of unity
    for k in 0..=kmax.min(5) {
        jobs.push(Box::new(move || {
            let id = format!("identities:euler-multinomial:k={k}");
            let kappa = 2 * k + 1;
            let mut buckets = vec![Rational::from_integer(0.into()); kappa as usize];
            for parts in compositions(kappa, kappa) {
                let mult = multinomial(kappa, &parts).expect("composition");
                let mut sign = 0u64;
                let mut root = 0u64;
                for (l, &nl) in parts.iter().enumerate() {
                    sign += nl * nl.saturating_sub(1) / 2;
                    root = (root + (l as u64 + 1) * nl) % kappa;
                }
                let term = Rational::from_integer(mult) * sign_pow(sign);
                buckets[root as usize] += term;
            }
            let mut acc = Cyclotomic::zero(kappa);
            for (e, w) in buckets.into_iter().enumerate() {
                acc = acc.add(
                    &Cyclotomic::root_of_unity(kappa, e as i64)
                        .unwrap()
                        .scale(&w),
                );
            }
            match acc.as_rational() {
                Some(r) => {
                    let rhs =
                        sign_pow(k) / (rat_i(kappa as i64) * two_pow(2 * k as i64)) * r;
                    rational_case(id, &Rational::from_integer(euler_number(2 * k)), &rhs)
                }
                None => CaseResult::error(id, "sum is not rational"),
            }
        }));
    }

    // the odd/even-split identity family at conductor 4, kappa d <= 10
    for omega in OMEGAS {
        for k in 0..=4i64 {
            let kappa = 2 * k as u64 + 1;
            for d in 1..=dmax.min(10) {
                if kappa * d > 10 {
                    continue;
                }
                jobs.push(Box::new(move || {
                    let id = format!("identities:conductor-4:omega={omega}:kappa={kappa}:d={d}");
                    let chi4 = kronecker_character(-4).expect("fundamental");
                    let run = || -> multizeta_core::Result<CaseResult> {
                        let lhs = chi4_partition_sum(omega, d, k)?;
                        let rhs = c_constant(omega, d, k, &chi4)?
                            .mul(&a_chi_minus4_closed(omega, k, kappa * d, Some(d))?)
                            .mul(&Cyclotomic::root_of_unity(4, -((kappa * d) as i64))?);
                        Ok(exact_case(id.clone(), &lhs, &rhs))
                    };
                    run().unwrap_or_else(|e| CaseResult::error(id, e))
                }));
            }
        }
    }

    SuiteReport::new("identities", run_cases(jobs))
}

/// A table row: both engines must reproduce the closed-form coefficient.
fn table_case(
    id: String,
    omega: Omega,
    d: u64,
    k: i64,
    chi: Character,
    expected: Rational,
) -> CaseResult {
    let run = || -> multizeta_core::Result<CaseResult> {
        let req = EvalRequest::new(omega, d, k, chi.clone())?;
        let kappa = req.kappa();
        let expected = PiMultiple::new(Cyclotomic::from_rational(expected), kappa * d);
        let one = eval_formula_i(&req)?;
        let two = eval_formula_ii(&req)?;
        let pass = one.value_eq(&expected) && two.value_eq(&expected);
        Ok(CaseResult::exact(
            id.clone(),
            pass,
            format!("I: {one} / II: {two}"),
            expected.to_string(),
        ))
    };
    run().unwrap_or_else(|e| CaseResult::error(id, e))
}

pub fn suite_tables(dmax: u64) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    let one = Character::principal(1);
    let one2 = Character::principal(2);
    let chi4 = kronecker_character(-4).expect("fundamental");

    // trivial character, strict: 1/(2d+1)!, 2^{2d+1}/(4d+2)!, 3*2^{6d+1}/(6d+3)!
    for d in 1..=dmax.min(4) {
        for (k, expected) in [
            (1i64, Rational::new(1.into(), factorial(2 * d + 1))),
            (
                2,
                two_pow(2 * d as i64 + 1) / Rational::from_integer(factorial(4 * d + 2)),
            ),
            (
                3,
                rat_i(3) * two_pow(6 * d as i64 + 1)
                    / Rational::from_integer(factorial(6 * d + 3)),
            ),
        ] {
            let chi = one.clone();
            jobs.push(Box::new(move || {
                table_case(
                    format!("tables:zeta-strict:k={k}:d={d}"),
                    Omega::Bullet,
                    d,
                    k,
                    chi,
                    expected,
                )
            }));
        }
        // weak {2}^d: (-1)^{d-1} (2^{2d}-2) B_{2d} / (2d)!
        let chi = one.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d - 1) * (two_pow(2 * d as i64) - rat_i(2)) * bernoulli(2 * d)
                / Rational::from_integer(factorial(2 * d));
            table_case(
                format!("tables:zeta-weak:k=1:d={d}"),
                Omega::Star,
                d,
                1,
                chi,
                expected,
            )
        }));
    }

    // odd-index sums (principal mod 2)
    for d in 1..=dmax.min(3) {
        for (k, expected) in [
            (
                1i64,
                two_pow(-2 * (d as i64)) / Rational::from_integer(factorial(2 * d)),
            ),
            (
                2,
                two_pow(-2 * (d as i64)) / Rational::from_integer(factorial(4 * d)),
            ),
            (
                3,
                rat(3, 4) / Rational::from_integer(factorial(6 * d)),
            ),
        ] {
            let chi = one2.clone();
            jobs.push(Box::new(move || {
                table_case(
                    format!("tables:odd-index-strict:k={k}:d={d}"),
                    Omega::Bullet,
                    d,
                    k,
                    chi,
                    expected,
                )
            }));
        }
        let chi = one2.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d) * Rational::from_integer(euler_number(2 * d))
                / (two_pow(2 * d as i64) * Rational::from_integer(factorial(2 * d)));
            table_case(
                format!("tables:odd-index-weak:k=1:d={d}"),
                Omega::Star,
                d,
                1,
                chi,
                expected,
            )
        }));
    }

    // conductor 4 tables: kappa = 1 both families, kappa = 3 and the
    // kappa = 5 Lucas closed form, strict family
    for d in 1..=dmax.min(4) {
        let chi = chi4.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d * (d - 1) / 2)
                / (two_pow(2 * d as i64) * Rational::from_integer(factorial(d)));
            table_case(
                format!("tables:conductor4-strict:kappa=1:d={d}"),
                Omega::Bullet,
                d,
                0,
                chi,
                expected,
            )
        }));
        let chi = chi4.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d * (d - 1) / 2) * euler_poly(d, &rat(3, 4))
                / Rational::from_integer(factorial(d));
            table_case(
                format!("tables:conductor4-weak:kappa=1:d={d}"),
                Omega::Star,
                d,
                0,
                chi,
                expected,
            )
        }));
    }
    for d in 1..=dmax.min(3) {
        let chi = chi4.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d * (d - 1) / 2) * rat_i(3)
                / (two_pow(3 * d as i64 + 1) * Rational::from_integer(factorial(3 * d)));
            table_case(
                format!("tables:conductor4-strict:kappa=3:d={d}"),
                Omega::Bullet,
                d,
                1,
                chi,
                expected,
            )
        }));
        let chi = chi4.clone();
        jobs.push(Box::new(move || {
            let expected = sign_pow(d * (d - 1) / 2)
                * rat_i(5)
                * (Rational::from_integer(lucas(5 * d)) - rat_i(1))
                / (two_pow(5 * d as i64 + 2) * Rational::from_integer(factorial(5 * d)));
            table_case(
                format!("tables:conductor4-strict:kappa=5:d={d}"),
                Omega::Bullet,
                d,
                2,
                chi,
                expected,
            )
        }));
    }

    // kappa = 10 Lucas closed forms
    for d in 1..=dmax.min(2) {
        let chi = one.clone();
        jobs.push(Box::new(move || {
            let expected = two_pow(10 * d as i64 + 1)
                * rat_i(5)
                * (Rational::from_integer(lucas(10 * d + 5)) + rat_i(1))
                / Rational::from_integer(factorial(10 * d + 5));
            table_case(
                format!("tables:zeta-strict:k=5:d={d}"),
                Omega::Bullet,
                d,
                5,
                chi,
                expected,
            )
        }));
    }
    {
        let chi = one2.clone();
        jobs.push(Box::new(move || {
            let expected = rat_i(5) * (Rational::from_integer(lucas(10)) + rat_i(1))
                / (two_pow(4) * Rational::from_integer(factorial(10)));
            table_case(
                "tables:odd-index-strict:k=5:d=1".to_string(),
                Omega::Bullet,
                1,
                5,
                chi,
                expected,
            )
        }));
    }

    // binomial helper sums: the classical scalar identities
    jobs.push(Box::new(|| {
        rational_case("tables:s-sum:k=1".into(), &sum_s(1, &rat_i(1)), &rat(1, 3))
    }));
    for k in 2..=6u64 {
        jobs.push(Box::new(move || {
            let rhs = rat_i(-(2 * k as i64 - 1)) * bernoulli(2 * k);
            rational_case(format!("tables:s-sum:k={k}"), &sum_s(k, &rat_i(1)), &rhs)
        }));
    }
    for k in 0..=5u64 {
        jobs.push(Box::new(move || {
            let rhs = two_pow(2 * k as i64 + 1) * euler_poly(2 * k + 1, &rat_i(1));
            rational_case(format!("tables:t-sum:k={k}"), &sum_t(k, &rat_i(1)), &rhs)
        }));
    }

    // weak {4}^d via the S-sums, and its odd-index twin via the T-sums
    for d in 1..=dmax.min(2) {
        let chi = one.clone();
        jobs.push(Box::new(move || {
            let expected = ((two_pow(4 * d as i64) + rat_i(4)) * sum_s(2 * d, &rat_i(-1))
                - rat_i(4) * sum_s(2 * d, &rat_i(-4)))
                / Rational::from_integer(factorial(4 * d));
            table_case(
                format!("tables:zeta-weak-s-form:k=2:d={d}"),
                Omega::Star,
                d,
                2,
                chi,
                expected,
            )
        }));
        let chi = one2.clone();
        jobs.push(Box::new(move || {
            let expected = sum_t(2 * d, &rat_i(-1))
                / (two_pow(4 * d as i64) * Rational::from_integer(factorial(4 * d)));
            table_case(
                format!("tables:odd-index-weak-t-form:k=2:d={d}"),
                Omega::Star,
                d,
                2,
                chi,
                expected,
            )
        }));
    }

    SuiteReport::new("tables", run_cases(jobs))
}

pub fn suite_cross(nmax: u64, kappamax: u64, dmax: u64) -> SuiteReport {
    let mut jobs: Vec<Job> = Vec::new();
    let chi4 = kronecker_character(-4).expect("fundamental");
    let chi8 = kronecker_character(-8).expect("fundamental");
    let one = Character::principal(1);

    // engine vs engine, exact, on the full grid
    for modulus in 1..=nmax {
        for chi in Character::characters_mod(modulus) {
            for (kappa, k) in admissible(&chi, kappamax) {
                for d in 1..=dmax {
                    for omega in OMEGAS {
                        let chi = chi.clone();
                        jobs.push(Box::new(move || {
                            let id = format!(
                                "cross:engines:omega={omega}:chi={}:kappa={kappa}:d={d}",
                                chi.label()
                            );
                            let run = || -> multizeta_core::Result<CaseResult> {
                                let req = EvalRequest::new(omega, d, k, chi.clone())?;
                                let lhs = eval_formula_i(&req)?;
                                let rhs = eval_formula_ii(&req)?;
                                Ok(exact_pi_case(id.clone(), &lhs, &rhs))
                            };
                            run().unwrap_or_else(|e| CaseResult::error(id, e))
                        }));
                    }
                }
            }
        }
    }

    // A-coefficient vanishing off multiples of kappa
    for modulus in 1..=nmax {
        for chi in Character::characters_mod(modulus) {
            for (kappa, k) in admissible(&chi, kappamax) {
                for omega in OMEGAS {
                    let chi = chi.clone();
                    jobs.push(Box::new(move || {
                        let id = format!(
                            "cross:a-vanishing:omega={omega}:chi={}:kappa={kappa}",
                            chi.label()
                        );
                        for n in 1..=(3 * kappa) {
                            if n % kappa == 0 {
                                continue;
                            }
                            match a_coeff(omega, k, &chi, n) {
                                Ok(a) if a.is_zero() => {}
                                Ok(a) => {
                                    return CaseResult::exact(
                                        id,
                                        false,
                                        format!("A_{n} = {a}"),
                                        "0".into(),
                                    )
                                }
                                Err(e) => return CaseResult::error(id, e),
                            }
                        }
                        CaseResult::exact(id, true, "0".into(), "0".into())
                    }));
                }
            }
        }
    }

    // numeric oracle agreement at absolutely convergent grid points
    let oracle_cfg = OracleConfig {
        cutoff: 10_000,
        grouping: Grouping::None,
    };
    for modulus in 1..=nmax {
        for chi in Character::characters_mod(modulus) {
            for (kappa, k) in admissible(&chi, kappamax) {
                if kappa < 2 {
                    continue;
                }
                for d in 1..=dmax.min(2) {
                    for omega in OMEGAS {
                        let chi = chi.clone();
                        jobs.push(Box::new(move || {
                            let id = format!(
                                "cross:oracle:omega={omega}:chi={}:kappa={kappa}:d={d}",
                                chi.label()
                            );
                            let run = || -> multizeta_core::Result<CaseResult> {
                                let req = EvalRequest::new(omega, d, k, chi.clone())?;
                                let exact = eval_formula_i(&req)?;
                                let (er, ei) = exact.to_f64_pair();
                                let numeric = numeric_multiple_l_equal(
                                    omega,
                                    kappa as f64,
                                    &chi,
                                    d,
                                    &oracle_cfg,
                                )?;
                                let (nr, ni) = numeric.value_f64();
                                let dev = ((er - nr).powi(2) + (ei - ni).powi(2)).sqrt();
                                let pass =
                                    dev <= numeric.tail_bound && numeric.tail_bound <= 1e-6;
                                Ok(CaseResult::numeric(
                                    id.clone(),
                                    pass,
                                    format!("engine {er}+{ei}i"),
                                    format!(
                                        "oracle {nr}+{ni}i (bound {:.3e})",
                                        numeric.tail_bound
                                    ),
                                    dev,
                                ))
                            };
                            run().unwrap_or_else(|e| CaseResult::error(id, e))
                        }));
                    }
                }
            }
        }
    }

    // the vanishing double value at conductor 8: exact zero and a grouped
    // conditionally convergent numeric check
    {
        let chi8 = chi8.clone();
        jobs.push(Box::new(move || {
            let id = "cross:zero-value:conductor8".to_string();
            let run = || -> multizeta_core::Result<CaseResult> {
                let req = EvalRequest::new(Omega::Bullet, 2, 0, chi8.clone())?;
                let exact = eval_formula_i(&req)?;
                if !exact.is_zero() {
                    return Ok(CaseResult::exact(
                        id.clone(),
                        false,
                        exact.to_string(),
                        "0".into(),
                    ));
                }
                let numeric = numeric_multiple_l_equal(
                    Omega::Bullet,
                    1.0,
                    &chi8,
                    2,
                    &OracleConfig {
                        cutoff: 100_000,
                        grouping: Grouping::FullPeriod,
                    },
                )?;
                let (nr, ni) = numeric.value_f64();
                let dev = (nr * nr + ni * ni).sqrt();
                Ok(CaseResult::numeric(
                    id.clone(),
                    dev <= 1e-4,
                    "0".into(),
                    format!("oracle {nr}+{ni}i"),
                    dev,
                ))
            };
            run().unwrap_or_else(|e| CaseResult::error(id, e))
        }));
    }

    // conversions between the strict and weak families round-trip
    for (label, k, chi) in [("trivial", 1i64, one.clone()), ("conductor4", 0, chi4.clone())] {
        for d in 1..=4u64 {
            let chi = chi.clone();
            jobs.push(Box::new(move || {
                let id = format!("cross:convert:{label}:d={d}");
                let run = || -> multizeta_core::Result<CaseResult> {
                    let direct = eval_formula_i(&EvalRequest::new(
                        Omega::Star,
                        d,
                        k,
                        chi.clone(),
                    )?)?;
                    let converted = convert_bullet_star(d, |depth| {
                        eval_formula_i(&EvalRequest::new(Omega::Bullet, depth, k, chi.clone())?)
                    })?;
                    let round = convert_bullet_star(d, |depth| {
                        convert_bullet_star(depth, |inner| {
                            eval_formula_i(&EvalRequest::new(
                                Omega::Star,
                                inner,
                                k,
                                chi.clone(),
                            )?)
                        })
                    })?;
                    let pass = converted.value_eq(&direct) && round.value_eq(&direct);
                    Ok(CaseResult::exact(
                        id.clone(),
                        pass,
                        converted.to_string(),
                        direct.to_string(),
                    ))
                };
                run().unwrap_or_else(|e| CaseResult::error(id, e))
            }));
        }
    }

    // rank 2: permutation invariance, reduction to rank 1, numeric oracle
    {
        let specs_pool = [
            (1i64, one.clone(), 2.0f64),
            (0, chi4.clone(), 1.0),
        ];
        for (i, a) in specs_pool.iter().enumerate() {
            for (j, b) in specs_pool.iter().enumerate() {
                for d in 1..=dmax.min(2) {
                    for omega in OMEGAS {
                        let (ka, chia, sa) = (a.0, a.1.clone(), a.2);
                        let (kb, chib, sb) = (b.0, b.1.clone(), b.2);
                        jobs.push(Box::new(move || {
                            let id = format!(
                                "cross:rank2:omega={omega}:d={d}:pair={i}{j}"
                            );
                            let run = || -> multizeta_core::Result<CaseResult> {
                                let fwd = eval_higher_rank(
                                    omega,
                                    d,
                                    &[(ka, chia.clone()), (kb, chib.clone())],
                                )?;
                                let rev = eval_higher_rank(
                                    omega,
                                    d,
                                    &[(kb, chib.clone()), (ka, chia.clone())],
                                )?;
                                if !fwd.value_eq(&rev) {
                                    return Ok(CaseResult::exact(
                                        id.clone(),
                                        false,
                                        fwd.to_string(),
                                        rev.to_string(),
                                    ));
                                }
                                let boundary = sa == 1.0 || sb == 1.0;
                                let cfg = OracleConfig {
                                    cutoff: if boundary { 50_000 } else { 10_000 },
                                    grouping: if boundary {
                                        Grouping::FullPeriod
                                    } else {
                                        Grouping::None
                                    },
                                };
                                let numeric = numeric_higher_rank(
                                    omega,
                                    d,
                                    &[
                                        RankSpec {
                                            s: sa,
                                            f: PeriodicFn::from_character(&chia),
                                        },
                                        RankSpec {
                                            s: sb,
                                            f: PeriodicFn::from_character(&chib),
                                        },
                                    ],
                                    &cfg,
                                )?;
                                let (er, ei) = fwd.to_f64_pair();
                                let (nr, ni) = numeric.value_f64();
                                let dev =
                                    ((er - nr).powi(2) + (ei - ni).powi(2)).sqrt();
                                Ok(CaseResult::numeric(
                                    id.clone(),
                                    dev <= numeric.tail_bound + 1e-10,
                                    format!("engine {er}+{ei}i"),
                                    format!(
                                        "oracle {nr}+{ni}i (bound {:.3e})",
                                        numeric.tail_bound
                                    ),
                                    dev,
                                ))
                            };
                            run().unwrap_or_else(|e| CaseResult::error(id, e))
                        }));
                    }
                }
            }
        }
        // rank 1 reduces to the plain evaluation
        for omega in OMEGAS {
            for d in 1..=dmax.min(3) {
                let one = one.clone();
                jobs.push(Box::new(move || {
                    let id = format!("cross:rank1-reduction:omega={omega}:d={d}");
                    let run = || -> multizeta_core::Result<CaseResult> {
                        let ranked = eval_higher_rank(omega, d, &[(1, one.clone())])?;
                        let plain =
                            eval_formula_i(&EvalRequest::new(omega, d, 1, one.clone())?)?;
                        Ok(exact_pi_case(id.clone(), &ranked, &plain))
                    };
                    run().unwrap_or_else(|e| CaseResult::error(id, e))
                }));
            }
        }
    }

    // central values
    for omega in OMEGAS {
        jobs.push(Box::new(move || {
            let id = format!("cross:central:trivial-closed-form:omega={omega}");
            let one = Character::principal(1);
            for d in 1..=10u64 {
                let req = match CentralRequest::new(omega, d, 0, one.clone()) {
                    Ok(r) => r,
                    Err(e) => return CaseResult::error(id, e),
                };
                let series = match central_value(&req) {
                    Ok(v) => v,
                    Err(e) => return CaseResult::error(id, e),
                };
                let closed = central_closed_form_n1(omega, d);
                if series.as_rational() != Some(closed.clone()) {
                    return CaseResult::exact(
                        id,
                        false,
                        series.to_string(),
                        format_rational(&closed),
                    );
                }
            }
            CaseResult::exact(id, true, "binomial series".into(), "matched d<=10".into())
        }));
    }
    jobs.push(Box::new(|| {
        let id = "cross:central:depth1-at-zero".to_string();
        let one = Character::principal(1);
        let req = CentralRequest::new(Omega::Bullet, 1, 0, one).expect("valid");
        match central_value(&req) {
            Ok(v) => rational_case(id, &v.as_rational().unwrap_or_else(|| rat_i(0)), &rat(-1, 2)),
            Err(e) => CaseResult::error(id, e),
        }
    }));
    for modulus in 2..=5u64 {
        for omega in OMEGAS {
            jobs.push(Box::new(move || {
                let id = format!("cross:central:principal-vanishing:N={modulus}:omega={omega}");
                let chi = Character::principal(modulus);
                for k in 0..=2i64 {
                    for d in 1..=6u64 {
                        let req = match CentralRequest::new(omega, d, k, chi.clone()) {
                            Ok(r) => r,
                            Err(e) => return CaseResult::error(id, e),
                        };
                        match central_value(&req) {
                            Ok(v) if v.is_zero() => {}
                            Ok(v) => {
                                return CaseResult::exact(
                                    id,
                                    false,
                                    format!("k={k} d={d}: {v}"),
                                    "0".into(),
                                )
                            }
                            Err(e) => return CaseResult::error(id, e),
                        }
                    }
                }
                CaseResult::exact(id, true, "0".into(), "0".into())
            }));
        }
    }
    for modulus in 1..=5u64 {
        for chi in Character::characters_mod(modulus) {
            if chi.is_principal() {
                continue;
            }
            for omega in OMEGAS {
                let chi = chi.clone();
                jobs.push(Box::new(move || {
                    let id = format!(
                        "cross:central:non-principal-vanishing:chi={}:omega={omega}",
                        chi.label()
                    );
                    for kappa in 0..=4u64 {
                        if kappa % 2 != chi.parity() as u64 {
                            continue;
                        }
                        let k = (kappa as i64 - chi.parity() as i64) / 2;
                        for d in 1..=6u64 {
                            let req = match CentralRequest::new(omega, d, k, chi.clone()) {
                                Ok(r) => r,
                                Err(e) => return CaseResult::error(id, e),
                            };
                            match central_value(&req) {
                                Ok(v) if v.is_zero() => {}
                                Ok(v) => {
                                    return CaseResult::exact(
                                        id,
                                        false,
                                        format!("kappa={kappa} d={d}: {v}"),
                                        "0".into(),
                                    )
                                }
                                Err(e) => return CaseResult::error(id, e),
                            }
                        }
                    }
                    CaseResult::exact(id, true, "0".into(), "0".into())
                }));
            }
        }
    }

    // q-deformation identity samples
    for omega in OMEGAS {
        for s in [2i64, 3] {
            for d in 1..=dmax.min(2) {
                for (label, chi) in [("trivial", one.clone()), ("conductor4", chi4.clone())] {
                    let chi = chi.clone();
                    jobs.push(Box::new(move || {
                        let id =
                            format!("cross:q-identity:omega={omega}:s={s}:d={d}:chi={label}");
                        let cfg = OracleConfig {
                            cutoff: 200,
                            grouping: Grouping::None,
                        };
                        match verify_q_l_identity(&rat(1, 2), s, &chi, d, omega, &cfg) {
                            Ok(report) => CaseResult::numeric(
                                id,
                                report.deviation <= 1e-8,
                                format!("{:?}", report.lhs),
                                format!("{:?}", report.rhs),
                                report.deviation,
                            ),
                            Err(e) => CaseResult::error(id, e),
                        }
                    }));
                }
            }
        }
    }

    // alternating family: the two exact routes agree; numeric checks
    for omega in OMEGAS {
        for k in 1..=2i64 {
            for d in 1..=dmax.min(3) {
                jobs.push(Box::new(move || {
                    let id = format!("cross:alternating-exact:omega={omega}:k={k}:d={d}");
                    let run = || -> multizeta_core::Result<CaseResult> {
                        let a = eval_alternating_even(omega, d, k)?;
                        let b = eval_alternating_genfun(omega, d, k)?;
                        Ok(exact_pi_case(id.clone(), &a, &b))
                    };
                    run().unwrap_or_else(|e| CaseResult::error(id, e))
                }));
            }
        }
    }
    jobs.push(Box::new(|| {
        let id = "cross:alternating-numeric:even".to_string();
        let run = || -> multizeta_core::Result<CaseResult> {
            let exact = eval_alternating_even(Omega::Bullet, 2, 1)?;
            let (er, _) = exact.to_f64_pair();
            let numeric = numeric_alternating(
                Omega::Bullet,
                2,
                2.0,
                &OracleConfig {
                    cutoff: 20_000,
                    grouping: Grouping::None,
                },
            )?;
            let (nr, _) = numeric.value_f64();
            let dev = (er - nr).abs();
            Ok(CaseResult::numeric(
                id.clone(),
                dev <= 1e-8,
                format!("engine {er}"),
                format!("oracle {nr}"),
                dev,
            ))
        };
        run().unwrap_or_else(|e| CaseResult::error(id, e))
    }));
    jobs.push(Box::new(|| {
        let id = "cross:alternating-numeric:all-ones".to_string();
        let run = || -> multizeta_core::Result<CaseResult> {
            let numeric = numeric_alternating(
                Omega::Bullet,
                2,
                1.0,
                &OracleConfig {
                    cutoff: 100_000,
                    grouping: Grouping::FullPeriod,
                },
            )?;
            let (closed, _) = alternating_ones_closed_form(
                Omega::Bullet,
                2,
                &OracleConfig {
                    cutoff: 20_000,
                    grouping: Grouping::None,
                },
            )?;
            let dev = (numeric.value_f64().0 - closed).abs();
            Ok(CaseResult::numeric(
                id.clone(),
                dev <= 1e-4,
                format!("series {}", numeric.value_f64().0),
                format!("log2/zeta form {closed}"),
                dev,
            ))
        };
        run().unwrap_or_else(|e| CaseResult::error(id, e))
    }));

    // infinite-product spot checks
    jobs.push(Box::new(|| {
        let id = "cross:product:sine".to_string();
        match product_identity_check(&Character::principal(1), 1, &[rat(1, 3)], 100_000) {
            Ok(report) => CaseResult::numeric(
                id,
                report.max_deviation <= 1e-6,
                "truncated product".into(),
                "sine closed form".into(),
                report.max_deviation,
            ),
            Err(e) => CaseResult::error(id, e),
        }
    }));
    jobs.push(Box::new(|| {
        let id = "cross:product:cosine".to_string();
        match product_identity_check(&Character::principal(2), 1, &[rat(1, 3)], 100_000) {
            Ok(report) => CaseResult::numeric(
                id,
                report.max_deviation <= 1e-6,
                "truncated product".into(),
                "cosine closed form".into(),
                report.max_deviation,
            ),
            Err(e) => CaseResult::error(id, e),
        }
    }));
    jobs.push(Box::new(|| {
        let id = "cross:product:modulus5".to_string();
        let chi5 = kronecker_character(5).expect("fundamental");
        match product_identity_check(&chi5, 1, &[rat(1, 4)], 100_000) {
            Ok(report) => CaseResult::numeric(
                id,
                report.max_deviation <= 1e-5,
                "truncated product".into(),
                "sine-product closed form".into(),
                report.max_deviation,
            ),
            Err(e) => CaseResult::error(id, e),
        }
    }));

    // streamed composition enumeration visits exactly the predicted count
    jobs.push(Box::new(|| {
        let id = "cross:composition-guard".to_string();
        let chi5 = kronecker_character(5).expect("fundamental");
        let n = 4u64;
        let (_, visits) = match a_coeff_counted(Omega::Bullet, 1, &chi5, n) {
            Ok(x) => x,
            Err(e) => return CaseResult::error(id, e),
        };
        let half_n = 2u64;
        let kappa = 2u64;
        let outer: u64 = multizeta_core::partitions::composition_count(n, half_n)
            .try_into()
            .expect("small");
        let mut expected = outer;
        for parts in compositions(n, half_n) {
            for &nj in &parts {
                let c: u64 = multizeta_core::partitions::composition_count(nj, kappa)
                    .try_into()
                    .expect("small");
                expected += c;
            }
        }
        CaseResult::exact(
            id,
            visits == expected,
            visits.to_string(),
            expected.to_string(),
        )
    }));

    SuiteReport::new("cross", run_cases(jobs))
}

/// Dispatch by suite name; `all` concatenates every suite.
pub fn run_suite(name: &str, kmax: u64, dmax: u64, nmax: u64) -> Option<Vec<SuiteReport>> {
    match name {
        "identities" => Some(vec![suite_identities(kmax, dmax)]),
        "tables" => Some(vec![suite_tables(dmax)]),
        "cross" => Some(vec![suite_cross(nmax, 4, dmax.min(3))]),
        "all" => Some(vec![
            suite_identities(kmax, dmax),
            suite_tables(dmax),
            suite_cross(nmax, 4, dmax.min(3)),
        ]),
        _ => None,
    }
}
