//! Evaluation by summation over integer partitions.
//!
//! The value at equal arguments kappa with d equal characters is a single
//! sum over partitions mu of d; each part contributes a primitive character
//! chi^{mu_j}', its Gauss sum, conductor power, Euler-factor correction and
//! a generalized Bernoulli number. The global sign (-1)^{kappa d / 2} is
//! realized as zeta_4^{kappa d}, which keeps odd kappa d inside the
//! cyclotomic value model.

use num_traits::Zero;

use crate::characters::{gauss_sum, is_fundamental_discriminant, kronecker_character, Character};
use crate::cyclotomic::{prime_factors, Cyclotomic};
use crate::partitions::{partition_constants, partitions_of};
use crate::pi_multiple::PiMultiple;
use crate::rational::{factorial, pow_i, rat_i, sign_pow, two_pow, Rational};
use crate::request::{EvalRequest, Omega};
use crate::sequences::{bernoulli, euler_number, gen_bernoulli};
use crate::{Error, Result};

struct PartData {
    conductor: u64,
    parity: u64,
    tau: Cyclotomic,
    alpha: Cyclotomic,
    bern_over_fact: Cyclotomic,
}

fn part_data(chi: &Character, kappa: u64, part: u64) -> PartData {
    let power = chi.power(part as i64);
    let prim = power.primitive();
    let n = kappa * part;
    let bern = gen_bernoulli(n, &prim.conjugate());
    PartData {
        conductor: prim.modulus(),
        parity: prim.parity() as u64,
        tau: gauss_sum(&prim),
        alpha: crate::characters::euler_factor_alpha(&power, n),
        bern_over_fact: bern.scale(&Rational::new(1.into(), factorial(n))),
    }
}

/// The braced partition sum of the main closed form, before the
/// zeta_4^{kappa d} 2^{kappa d} prefactor. Exposed separately because the
/// identity suite equates it with the generating-function side.
pub fn formula_i_partition_sum(req: &EvalRequest) -> Result<Cyclotomic> {
    let kappa = req.kappa();
    let chi = &req.chi;
    let d = req.depth;
    let mut cache: std::collections::HashMap<u64, PartData> = std::collections::HashMap::new();
    let mut total = Cyclotomic::from_int(0);
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let mut coeff = Rational::new(
            rat_i(req.omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff /= two_pow(consts.length as i64);
        let mut parity_sum = 0u64;
        let mut conductor_pow = Rational::one();
        let mut term = Cyclotomic::from_int(1);
        for &part in mu.parts() {
            let data = cache
                .entry(part)
                .or_insert_with(|| part_data(chi, kappa, part));
            parity_sum += data.parity;
            conductor_pow *= pow_i(&rat_i(data.conductor as i64), (kappa * part) as i64);
            term = term.mul(&data.tau).mul(&data.alpha).mul(&data.bern_over_fact);
        }
        // (-1)^{l(mu) - e_mu(chi)}
        coeff *= sign_pow(consts.length + parity_sum);
        coeff /= conductor_pow;
        total = total.add(&term.scale(&coeff));
    }
    Ok(total)
}

/// Assembles the closed-form value from the partition sum.
pub fn eval_formula_i(req: &EvalRequest) -> Result<PiMultiple> {
    let kappa = req.kappa();
    let d = req.depth;
    let sum = formula_i_partition_sum(req)?;
    let sign = Cyclotomic::root_of_unity(4, (kappa * d) as i64)?;
    let coefficient = sum.mul(&sign).scale(&two_pow((kappa * d) as i64));
    Ok(PiMultiple::new(coefficient, kappa * d))
}

use num_traits::One;

/// Specialization to principal characters mod N (kappa = 2k): the
/// coefficient is plainly rational.
pub fn eval_principal(omega: Omega, d: u64, k: i64, modulus: u64) -> Result<PiMultiple> {
    if k < 1 || modulus == 0 || d == 0 {
        return Err(Error::InvalidRequest(
            "principal evaluation needs k >= 1, N >= 1, d >= 1".into(),
        ));
    }
    let k = k as u64;
    let primes: Vec<u64> = prime_factors(modulus).iter().map(|&(p, _)| p).collect();
    let mut sum = Rational::zero();
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let mut coeff = Rational::new(
            rat_i(omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff *= sign_pow(consts.length);
        coeff /= two_pow(consts.length as i64);
        for &part in mu.parts() {
            for &p in &primes {
                coeff *= Rational::one() - pow_i(&rat_i(p as i64), -((2 * k * part) as i64));
            }
            coeff *= bernoulli(2 * k * part);
            coeff /= Rational::from_integer(factorial(2 * k * part));
        }
        sum += coeff;
    }
    let coefficient = sum * sign_pow(k * d) * two_pow((2 * k * d) as i64);
    Ok(PiMultiple::new(
        Cyclotomic::from_rational(coefficient),
        2 * k * d,
    ))
}

/// Specialization to the primitive real character of a fundamental
/// discriminant D, split over odd and even parts of each partition.
pub fn eval_real_primitive(omega: Omega, d: u64, k: i64, disc: i64) -> Result<PiMultiple> {
    if !is_fundamental_discriminant(disc) {
        return Err(Error::NotFundamental(disc));
    }
    let chi = kronecker_character(disc)?;
    let e_d = chi.parity() as i64;
    let kappa_signed = 2 * k + e_d;
    if kappa_signed < 1 || d == 0 {
        return Err(Error::InvalidRequest(
            "real-primitive evaluation needs kappa >= 1 and d >= 1".into(),
        ));
    }
    if kappa_signed == 1 && chi.is_principal() {
        return Err(Error::InvalidRequest("kappa = 1 needs |D| > 1".into()));
    }
    let kappa = kappa_signed as u64;
    let abs_d = disc.unsigned_abs();
    let primes: Vec<u64> = prime_factors(abs_d).iter().map(|&(p, _)| p).collect();
    let sqrt_abs_d = Cyclotomic::sqrt_int(abs_d);

    let mut total = Cyclotomic::from_int(0);
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let odd = &consts.odd;
        let even = &consts.even;
        let mut coeff = Rational::new(
            rat_i(omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff *= sign_pow(consts.length);
        coeff /= two_pow(consts.length as i64);
        // Euler corrections only at even parts (where the power of chi is
        // principal).
        for &part in even.parts() {
            for &p in &primes {
                coeff *= Rational::one() - pow_i(&rat_i(p as i64), -((kappa * part) as i64));
            }
            coeff *= bernoulli(kappa * part);
            coeff /= Rational::from_integer(factorial(kappa * part));
        }
        for &part in odd.parts() {
            let b = gen_bernoulli(kappa * part, &chi)
                .as_rational()
                .expect("real character Bernoulli numbers are rational");
            coeff *= b;
            coeff /= Rational::from_integer(factorial(kappa * part));
        }
        // |D|^{kappa |mu_o| - l(mu_o)/2} in the denominator
        let odd_size = odd.size();
        let odd_len = odd.length();
        coeff /= pow_i(&rat_i(abs_d as i64), (kappa * odd_size) as i64);
        let mut term = Cyclotomic::from_rational(coeff);
        term = term.mul(&sqrt_abs_d.pow(odd_len as i64)?);
        // (-1)^{-e(D) l(mu_o)/2} as zeta_4^{-e(D) l(mu_o)}
        let quarter_turns = -(e_d * odd_len as i64);
        term = term.mul(&Cyclotomic::root_of_unity(4, quarter_turns)?);
        total = total.add(&term);
    }
    let sign = Cyclotomic::root_of_unity(4, (kappa * d) as i64)?;
    let coefficient = total.mul(&sign).scale(&two_pow((kappa * d) as i64));
    Ok(PiMultiple::new(coefficient, kappa * d))
}

/// Exact alternating values at even positive arguments 2k (numerators
/// (-1)^m): a rational multiple of pi^{2kd}.
pub fn eval_alternating_even(omega: Omega, d: u64, k: i64) -> Result<PiMultiple> {
    if k < 1 || d == 0 {
        return Err(Error::InvalidRequest(
            "alternating even evaluation needs k >= 1, d >= 1".into(),
        ));
    }
    let k = k as u64;
    let mut sum = Rational::zero();
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let odd = &consts.odd;
        let even = &consts.even;
        let mut coeff = Rational::new(
            rat_i(omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff *= sign_pow(even.length());
        for &part in odd.parts() {
            coeff *= two_pow((2 * k * part) as i64 - 1) - Rational::one();
        }
        coeff /= two_pow((even.length() + 2 * k * odd.size()) as i64);
        for &part in mu.parts() {
            coeff *= bernoulli(2 * k * part);
            coeff /= Rational::from_integer(factorial(2 * k * part));
        }
        sum += coeff;
    }
    let coefficient = sum * sign_pow(k * d) * two_pow((2 * k * d) as i64);
    Ok(PiMultiple::new(
        Cyclotomic::from_rational(coefficient),
        2 * k * d,
    ))
}

/// The partition sum of the odd-conductor-4 closed form (odd/even split
/// with Euler-number products); used by the identity suite.
pub fn chi4_partition_sum(omega: Omega, d: u64, k: i64) -> Result<Cyclotomic> {
    let e_d = 1i64;
    let kappa_signed = 2 * k + e_d;
    if kappa_signed < 1 || d == 0 {
        return Err(Error::InvalidRequest("needs kappa >= 1 and d >= 1".into()));
    }
    let kappa = kappa_signed as u64;
    let mut total = Cyclotomic::from_int(0);
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let odd = &consts.odd;
        let even = &consts.even;
        let mut coeff = Rational::new(
            rat_i(omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff *= sign_pow(consts.length);
        for &part in even.parts() {
            coeff *= pow_i(&rat_i(2), (kappa * part) as i64) - Rational::one();
            coeff *= bernoulli(kappa * part);
            coeff /= Rational::from_integer(factorial(kappa * part));
        }
        for &part in odd.parts() {
            coeff *= Rational::from_integer(euler_number(kappa * part - 1));
            coeff /= Rational::from_integer(factorial(kappa * part - 1));
        }
        coeff /= two_pow((consts.length + kappa * odd.size()) as i64);
        // (-1)^{l(mu_o)/2} as zeta_4^{l(mu_o)}
        let term = Cyclotomic::from_rational(coeff)
            .mul(&Cyclotomic::root_of_unity(4, odd.length() as i64)?);
        total = total.add(&term);
    }
    Ok(total)
}

/// Higher-rank values: each index tuple carries r characters and r
/// arguments kappa_i; the partition sum acquires an r-fold product.
pub fn eval_higher_rank(omega: Omega, d: u64, specs: &[(i64, Character)]) -> Result<PiMultiple> {
    if specs.is_empty() || d == 0 {
        return Err(Error::InvalidRequest(
            "higher rank needs r >= 1 and d >= 1".into(),
        ));
    }
    let mut kappas = Vec::with_capacity(specs.len());
    for (k, chi) in specs {
        let kappa = 2 * k + chi.parity() as i64;
        if kappa < 1 {
            return Err(Error::InvalidRequest(format!(
                "kappa = {kappa} must be >= 1 for {}",
                chi.label()
            )));
        }
        if kappa == 1 && chi.is_principal() {
            return Err(Error::InvalidRequest(
                "kappa = 1 needs a non-principal character".into(),
            ));
        }
        kappas.push(kappa as u64);
    }
    let kappa_total: u64 = kappas.iter().sum();
    let r = specs.len() as u64;

    let mut total = Cyclotomic::from_int(0);
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let mut coeff = Rational::new(
            rat_i(omega.eps_mu(consts.eps)).numer().clone(),
            consts.z.clone(),
        );
        coeff /= two_pow((r * consts.length) as i64);
        let mut parity_sum = 0u64;
        let mut term = Cyclotomic::from_int(1);
        for ((_, chi), &kappa) in specs.iter().zip(&kappas) {
            for &part in mu.parts() {
                let data = part_data(chi, kappa, part);
                parity_sum += data.parity;
                coeff /= pow_i(&rat_i(data.conductor as i64), (kappa * part) as i64);
                term = term.mul(&data.tau).mul(&data.alpha).mul(&data.bern_over_fact);
            }
        }
        coeff *= sign_pow(r * consts.length + parity_sum);
        total = total.add(&term.scale(&coeff));
    }
    let sign = Cyclotomic::root_of_unity(4, (kappa_total * d) as i64)?;
    let coefficient = total.mul(&sign).scale(&two_pow((kappa_total * d) as i64));
    Ok(PiMultiple::new(coefficient, kappa_total * d))
}

/// Converts between the strict and weak value families: the depth-d value
/// of one family is the partition sum eps_mu u_mu over products of the
/// other family's values at depths mu_j. The same coefficients work in
/// both directions.
pub fn convert_bullet_star(
    d: u64,
    mut opposite: impl FnMut(u64) -> Result<PiMultiple>,
) -> Result<PiMultiple> {
    if d == 0 {
        return Err(Error::InvalidRequest("depth must be >= 1".into()));
    }
    let mut depth_values: Vec<PiMultiple> = Vec::with_capacity(d as usize);
    for depth in 1..=d {
        depth_values.push(opposite(depth)?);
    }
    let mut total: Option<PiMultiple> = None;
    for mu in partitions_of(d) {
        let consts = partition_constants(&mu);
        let mut term = PiMultiple::new(Cyclotomic::from_int(1), 0);
        for &part in mu.parts() {
            term = term.mul(&depth_values[(part - 1) as usize]);
        }
        let scale = Rational::from_integer(consts.u.clone()) * rat_i(consts.eps);
        let term = PiMultiple::new(term.coefficient.scale(&scale), term.pi_exponent);
        total = Some(match total {
            None => term,
            Some(acc) => {
                debug_assert_eq!(acc.pi_exponent, term.pi_exponent);
                PiMultiple::new(acc.coefficient.add(&term.coefficient), acc.pi_exponent)
            }
        });
    }
    Ok(total.expect("at least one partition"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn one() -> Character {
        Character::principal(1)
    }

    fn req(omega: Omega, d: u64, k: i64, chi: Character) -> EvalRequest {
        EvalRequest::new(omega, d, k, chi).unwrap()
    }

    #[test]
    fn zeta_values_depth_one() {
        // zeta(2) = pi^2/6
        let v = eval_formula_i(&req(Omega::Star, 1, 1, one())).unwrap();
        assert_eq!(v.pi_exponent, 2);
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 6));
        // zeta(4) = pi^4/90
        let v = eval_formula_i(&req(Omega::Bullet, 1, 2, one())).unwrap();
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 90));
    }

    #[test]
    fn depth_two_strict_doubles() {
        // value at ({2}^2) strict = pi^4/120
        let v = eval_formula_i(&req(Omega::Bullet, 2, 1, one())).unwrap();
        assert_eq!(v.pi_exponent, 4);
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 120));
        // weak = 7 pi^4/360
        let v = eval_formula_i(&req(Omega::Star, 2, 1, one())).unwrap();
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(7, 360));
    }

    #[test]
    fn conductor_four_depth_one() {
        // L(1) for the odd primitive character mod 4 = pi/4
        let chi = kronecker_character(-4).unwrap();
        let v = eval_formula_i(&req(Omega::Bullet, 1, 0, chi)).unwrap();
        assert_eq!(v.pi_exponent, 1);
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 4));
    }

    #[test]
    fn zero_value_conductor_eight_depth_two() {
        let chi = kronecker_character(-8).unwrap();
        let v = eval_formula_i(&req(Omega::Bullet, 2, 0, chi)).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn principal_specialization_agrees() {
        for omega in [Omega::Bullet, Omega::Star] {
            for modulus in 1..=4u64 {
                for k in 1..=2i64 {
                    for d in 1..=3u64 {
                        let direct = eval_principal(omega, d, k, modulus).unwrap();
                        let general = eval_formula_i(&req(
                            omega,
                            d,
                            k,
                            Character::principal(modulus),
                        ))
                        .unwrap();
                        assert!(
                            direct.value_eq(&general),
                            "omega={omega} N={modulus} k={k} d={d}: {direct} vs {general}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn principal_mod_two_values() {
        // odd-index sums: pi^2/8 at depth 1 weak, and the table pattern
        // 1/(2^{2d} (2d)!) for strict k=1
        let v = eval_principal(Omega::Star, 1, 1, 2).unwrap();
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 8));
        for d in 1..=4u64 {
            let v = eval_principal(Omega::Bullet, d, 1, 2).unwrap();
            let expected = Rational::new(1.into(), factorial(2 * d))
                * two_pow(-(2 * d as i64));
            assert_eq!(v.coefficient.as_rational().unwrap(), expected, "d={d}");
        }
    }

    #[test]
    fn real_primitive_agrees_with_general() {
        for omega in [Omega::Bullet, Omega::Star] {
            for disc in [-4i64, -8, 5] {
                let chi = kronecker_character(disc).unwrap();
                for k in 0..=1i64 {
                    let kappa = 2 * k + chi.parity() as i64;
                    if kappa < 1 {
                        continue;
                    }
                    for d in 1..=3u64 {
                        let direct = eval_real_primitive(omega, d, k, disc).unwrap();
                        let general =
                            eval_formula_i(&req(omega, d, k, chi.clone())).unwrap();
                        assert!(
                            direct.value_eq(&general),
                            "omega={omega} D={disc} k={k} d={d}: {direct} vs {general}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn real_primitive_depth_one_table() {
        let v = eval_real_primitive(Omega::Bullet, 1, 0, -4).unwrap();
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 4));
        let v = eval_real_primitive(Omega::Star, 1, 0, -4).unwrap();
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 4));
        assert!(eval_real_primitive(Omega::Bullet, 1, 1, 12).is_ok());
        assert!(eval_real_primitive(Omega::Bullet, 1, 0, 12).is_err());
        assert!(eval_real_primitive(Omega::Bullet, 1, 1, 9).is_err());
    }

    #[test]
    fn alternating_even_depth_one() {
        let v = eval_alternating_even(Omega::Bullet, 1, 1).unwrap();
        assert_eq!(v.pi_exponent, 2);
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(-1, 12));
    }

    #[test]
    fn higher_rank_reduces_to_rank_one() {
        for omega in [Omega::Bullet, Omega::Star] {
            for d in 1..=3u64 {
                let single = eval_higher_rank(omega, d, &[(1, one())]).unwrap();
                let direct = eval_formula_i(&req(omega, d, 1, one())).unwrap();
                assert!(single.value_eq(&direct), "omega={omega} d={d}");
            }
        }
    }

    #[test]
    fn higher_rank_rank_two_depth_one_is_product() {
        // depth 1: the sum factors into a product of two single values:
        // zeta(2)^2 = pi^4/36
        let v = eval_higher_rank(Omega::Bullet, 1, &[(1, one()), (1, one())]).unwrap();
        assert_eq!(v.pi_exponent, 4);
        assert_eq!(v.coefficient.as_rational().unwrap(), rat(1, 36));
    }

    #[test]
    fn higher_rank_permutation_invariant() {
        let chi4 = kronecker_character(-4).unwrap();
        for omega in [Omega::Bullet, Omega::Star] {
            for d in 1..=2u64 {
                let a = eval_higher_rank(omega, d, &[(1, one()), (0, chi4.clone())]).unwrap();
                let b = eval_higher_rank(omega, d, &[(0, chi4.clone()), (1, one())]).unwrap();
                assert!(a.value_eq(&b), "omega={omega} d={d}");
            }
        }
    }

    #[test]
    fn conversion_between_families() {
        // depth 1 is the identity
        let direct = eval_formula_i(&req(Omega::Star, 1, 1, one())).unwrap();
        let converted = convert_bullet_star(1, |depth| {
            eval_formula_i(&req(Omega::Bullet, depth, 1, one()))
        })
        .unwrap();
        assert!(converted.value_eq(&direct));
        // weak ({2}^2) from strict values = 7 pi^4/360
        let converted = convert_bullet_star(2, |depth| {
            eval_formula_i(&req(Omega::Bullet, depth, 1, one()))
        })
        .unwrap();
        assert_eq!(converted.coefficient.as_rational().unwrap(), rat(7, 360));
        // round trip at depths up to 4
        for d in 1..=4u64 {
            let direct = eval_formula_i(&req(Omega::Bullet, d, 1, one())).unwrap();
            let back = convert_bullet_star(d, |depth| {
                convert_bullet_star(depth, |inner| {
                    eval_formula_i(&req(Omega::Bullet, inner, 1, one()))
                })
            })
            .unwrap();
            assert!(back.value_eq(&direct), "round trip d={d}");
        }
    }

    #[test]
    fn request_validation() {
        assert!(EvalRequest::new(Omega::Bullet, 1, 0, one()).is_err());
        let chi4 = kronecker_character(-4).unwrap();
        assert!(EvalRequest::new(Omega::Bullet, 1, 0, chi4).is_ok());
        assert!(EvalRequest::new(Omega::Bullet, 0, 1, one()).is_err());
    }
}
