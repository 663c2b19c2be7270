//! Exact Bernoulli and Euler numbers, their polynomials, generalized
//! Bernoulli numbers attached to Dirichlet characters, Lucas numbers, and
//! the binomial helper sums over products of Bernoulli/Euler numbers.
//!
//! Convention: B_1 = +1/2, i.e. Bernoulli numbers are the coefficients of
//! t e^t / (e^t - 1). Most references use -1/2; everything downstream of
//! the non-positive-argument values depends on this sign, so it is fixed
//! here once.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::characters::Character;
use crate::cyclotomic::Cyclotomic;
use crate::rational::{binomial, pow_i, rat, rat_i, Rational};

/// B_n with B_1 = +1/2.
pub fn bernoulli(n: u64) -> Rational {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![Rational::one()]));
    {
        let guard = cache.lock().unwrap();
        if let Some(hit) = guard.get(n as usize) {
            return hit.clone();
        }
    }
    let mut local = cache.lock().unwrap().clone();
    while local.len() <= n as usize {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1 under B_1 = -1/2;
        // compute that recurrence, then flip the sign at index 1.
        let m = local.len() as u64;
        let mut acc = Rational::zero();
        for (j, b) in local.iter().enumerate() {
            let mut term = Rational::from_integer(binomial(m + 1, j as u64)) * b;
            if j == 1 {
                term = -term; // local stores B_1 = +1/2
            }
            acc += term;
        }
        let mut next = -acc / Rational::from_integer(BigInt::from(m + 1));
        if m == 1 {
            next = -next;
        }
        local.push(next);
    }
    let result = local[n as usize].clone();
    let mut guard = cache.lock().unwrap();
    if guard.len() < local.len() {
        *guard = local;
    }
    result
}

/// Euler numbers E_n (Taylor coefficients of sech); E_odd = 0.
pub fn euler_number(n: u64) -> BigInt {
    static CACHE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![BigInt::one()]));
    {
        let guard = cache.lock().unwrap();
        if let Some(hit) = guard.get((n / 2) as usize) {
            return if n % 2 == 1 {
                BigInt::zero()
            } else {
                hit.clone()
            };
        }
    }
    if n % 2 == 1 {
        return BigInt::zero();
    }
    let mut local = cache.lock().unwrap().clone();
    while local.len() <= (n / 2) as usize {
        // sum_{j=0}^{m} C(2m, 2j) E_{2j} = 0 for m >= 1
        let m = local.len() as u64;
        let mut acc = BigInt::zero();
        for (j, e) in local.iter().enumerate() {
            acc += binomial(2 * m, 2 * j as u64) * e;
        }
        local.push(-acc);
    }
    let result = local[(n / 2) as usize].clone();
    let mut guard = cache.lock().unwrap();
    if guard.len() < local.len() {
        *guard = local;
    }
    result
}

/// Euler polynomial E_n(x): 2 e^{tx} / (e^t + 1) = sum E_n(x) t^n / n!.
pub fn euler_poly(n: u64, x: &Rational) -> Rational {
    // E_n(x) = sum_k C(n,k) E_k / 2^k (x - 1/2)^{n-k}
    let shifted = x - rat(1, 2);
    let mut acc = Rational::zero();
    for k in 0..=n {
        let e = euler_number(k);
        if e.is_zero() {
            continue;
        }
        let term = Rational::from_integer(binomial(n, k))
            * Rational::new(e, BigInt::from(2).pow(k as u32))
            * pow_i(&shifted, (n - k) as i64);
        acc += term;
    }
    acc
}

/// Bernoulli polynomial B_n(x) built on the B_1 = -1/2 coefficients, so
/// that B_n(1) recovers this crate's B_n and B_n(0) the usual minus
/// convention.
pub fn bernoulli_poly(n: u64, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for k in 0..=n {
        let mut b = bernoulli(k);
        if k == 1 {
            b = -b;
        }
        if b.is_zero() {
            continue;
        }
        acc += Rational::from_integer(binomial(n, k)) * b * pow_i(x, (n - k) as i64);
    }
    acc
}

type CharKey = (u64, Vec<u64>);

fn char_key(chi: &Character) -> CharKey {
    chi.cache_key()
}

/// Generalized Bernoulli number B_{n,chi}, an exact element of
/// Q(zeta_{ord chi}), via the Bernoulli-polynomial closed form
/// N^{n-1} sum_a chi(a) B_n(a/N).
pub fn gen_bernoulli(n: u64, chi: &Character) -> Cyclotomic {
    static CACHE: OnceLock<Mutex<HashMap<(u64, CharKey), Cyclotomic>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (n, char_key(chi));
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let modulus = chi.modulus();
    let mut acc = Cyclotomic::zero(chi.order());
    for a in 1..=modulus {
        if let Some(e) = chi.value_exponent(a as i64) {
            let b = bernoulli_poly(n, &rat(a as i64, modulus as i64));
            if !b.is_zero() {
                let root = Cyclotomic::root_of_unity(chi.order(), e as i64).unwrap();
                acc = acc.add(&root.scale(&b));
            }
        }
    }
    let scale = pow_i(&rat_i(modulus as i64), n as i64 - 1);
    let value = acc.scale(&scale);
    let mut guard = cache.lock().unwrap();
    guard.entry(key).or_insert(value).clone()
}

/// Lucas numbers: L_1 = 1, L_2 = 3, L_n = L_{n-1} + L_{n-2}.
pub fn lucas(n: u64) -> BigInt {
    assert!(n >= 1);
    let (mut a, mut b) = (BigInt::from(1), BigInt::from(3));
    if n == 1 {
        return a;
    }
    for _ in 2..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    b
}

/// S_k(t) = sum_{n=0}^{k} C(2k, 2n) t^n B_{2n} B_{2k-2n}.
pub fn sum_s(k: u64, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for n in 0..=k {
        acc += Rational::from_integer(binomial(2 * k, 2 * n))
            * pow_i(t, n as i64)
            * bernoulli(2 * n)
            * bernoulli(2 * k - 2 * n);
    }
    acc
}

/// T_k(t) = sum_{n=0}^{k} C(2k, 2n) t^n E_{2n} E_{2k-2n}.
pub fn sum_t(k: u64, t: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for n in 0..=k {
        acc += Rational::from_integer(binomial(2 * k, 2 * n))
            * pow_i(t, n as i64)
            * Rational::from_integer(euler_number(2 * n) * euler_number(2 * k - 2 * n));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::{kronecker_character, Character};
    use crate::rational::factorial;
    use crate::cyclotomic::prime_factors;
    use crate::rational::big;
    use crate::series::PowerSeries;

    #[test]
    fn bernoulli_convention() {
        assert_eq!(bernoulli(0), rat_i(1));
        assert_eq!(bernoulli(1), rat(1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        for m in 1..=9u64 {
            assert_eq!(bernoulli(2 * m + 1), Rational::zero());
        }
    }

    #[test]
    fn bernoulli_matches_generating_series() {
        // t e^t/(e^t - 1) = e^t * inverse of (e^t - 1)/t, to order 20
        let t = 20usize;
        let exp_t = PowerSeries::from_coeffs(
            1,
            (0..=t)
                .map(|n| {
                    Cyclotomic::from_rational(Rational::new(1.into(), factorial(n as u64)))
                })
                .collect(),
        )
        .unwrap();
        let expm1_over_t = PowerSeries::from_coeffs(
            1,
            (0..=t)
                .map(|n| {
                    Cyclotomic::from_rational(Rational::new(1.into(), factorial(n as u64 + 1)))
                })
                .collect(),
        )
        .unwrap();
        let series = exp_t.mul(&expm1_over_t.inv().unwrap()).unwrap();
        for n in 0..=t {
            let expected = bernoulli(n as u64) / Rational::from_integer(factorial(n as u64));
            assert_eq!(series.coeff(n).as_rational().unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn euler_numbers() {
        assert_eq!(euler_number(0), big(1));
        assert_eq!(euler_number(1), big(0));
        assert_eq!(euler_number(2), big(-1));
        assert_eq!(euler_number(4), big(5));
        assert_eq!(euler_number(6), big(-61));
        assert_eq!(euler_number(10), big(-50521));
    }

    #[test]
    fn euler_numbers_match_sech_series() {
        // sech = 1/cosh; cosh t = sum t^{2n}/(2n)!
        let t = 14usize;
        let cosh = PowerSeries::from_coeffs(
            1,
            (0..=t)
                .map(|n| {
                    if n % 2 == 0 {
                        Cyclotomic::from_rational(Rational::new(1.into(), factorial(n as u64)))
                    } else {
                        Cyclotomic::zero(1)
                    }
                })
                .collect(),
        )
        .unwrap();
        let sech = cosh.inv().unwrap();
        for n in 0..=t {
            let expected = Rational::new(euler_number(n as u64), factorial(n as u64));
            assert_eq!(sech.coeff(n).as_rational().unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn euler_polynomials() {
        assert_eq!(euler_poly(0, &rat(5, 7)), rat_i(1));
        assert_eq!(euler_poly(1, &rat(3, 4)), rat(1, 4));
        for n in 0..=12u64 {
            let lhs = euler_poly(n, &rat(1, 2)) * crate::rational::two_pow(n as i64);
            assert_eq!(lhs, Rational::from_integer(euler_number(n)), "n={n}");
        }
        // E_n(1) values used by the T_k(1) identity
        assert_eq!(euler_poly(1, &rat_i(1)), rat(1, 2));
        assert_eq!(euler_poly(3, &rat_i(1)), rat(-1, 4));
    }

    #[test]
    fn gen_bernoulli_reduces_to_bernoulli() {
        let one = Character::principal(1);
        for n in 0..=12u64 {
            assert_eq!(
                gen_bernoulli(n, &one).as_rational().unwrap(),
                bernoulli(n),
                "n={n}"
            );
        }
    }

    #[test]
    fn gen_bernoulli_known_values() {
        let chi8 = kronecker_character(-8).unwrap();
        assert_eq!(gen_bernoulli(1, &chi8).as_rational().unwrap(), rat_i(-1));
        let chi4 = kronecker_character(-4).unwrap();
        assert_eq!(gen_bernoulli(1, &chi4).as_rational().unwrap(), rat(-1, 2));
        // B_{n, chi_{-4}} = -(n/2) E_{n-1}
        for n in 1..=10u64 {
            let lhs = gen_bernoulli(n, &chi4).as_rational().unwrap();
            let rhs = rat(-(n as i64), 2) * Rational::from_integer(euler_number(n - 1));
            assert_eq!(lhs, rhs, "n={n}");
        }
    }

    #[test]
    fn gen_bernoulli_parity_vanishing() {
        for modulus in 1..=8u64 {
            for chi in Character::characters_mod(modulus) {
                for n in 0..=10u64 {
                    if (n + chi.parity() as u64) % 2 == 1
                        && !(n == 1 && chi.is_principal() && modulus == 1)
                    {
                        assert!(
                            gen_bernoulli(n, &chi).is_zero(),
                            "B_{{{n}, {}}}",
                            chi.label()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gen_bernoulli_principal_factorization() {
        for modulus in 1..=12u64 {
            let principal = Character::principal(modulus);
            for m in 0..=10u64 {
                let mut expected = bernoulli(m);
                for (p, _) in prime_factors(modulus) {
                    expected *= rat_i(1) - pow_i(&rat_i(p as i64), m as i64 - 1);
                }
                assert_eq!(
                    gen_bernoulli(m, &principal).as_rational().unwrap(),
                    expected,
                    "N={modulus} m={m}"
                );
            }
        }
    }

    #[test]
    fn lucas_numbers() {
        assert_eq!(lucas(1), big(1));
        assert_eq!(lucas(2), big(3));
        assert_eq!(lucas(5), big(11));
        assert_eq!(lucas(10), big(123));
        assert_eq!(lucas(15), big(1364));
    }

    #[test]
    fn s_and_t_sums() {
        assert_eq!(sum_s(1, &rat_i(1)), rat(1, 3));
        for k in 2..=6u64 {
            let expected = rat_i(-(2 * k as i64 - 1)) * bernoulli(2 * k);
            assert_eq!(sum_s(k, &rat_i(1)), expected, "k={k}");
        }
        for k in 0..=5u64 {
            let expected = crate::rational::two_pow(2 * k as i64 + 1)
                * euler_poly(2 * k + 1, &rat_i(1));
            assert_eq!(sum_t(k, &rat_i(1)), expected, "k={k}");
        }
    }
}
