//! Evaluation by Taylor coefficients of generating functions.
//!
//! The generating function of the values at equal arguments kappa is an
//! infinite product that factors into sines (or cosecants) at rational
//! multiples of pi. Expanding each factor gives the A-sequences: finite
//! multinomial sums over compositions with root-of-unity weights and exact
//! trigonometric Taylor coefficients; the value itself is a constant
//! C times A_{kappa d} times pi^{kappa d}.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;

use crate::characters::{char_value_root, Character};
use crate::cyclotomic::{lcm, Cyclotomic};
use crate::extfloat::{Ext, ExtComplex};
use crate::partitions::{compositions, multinomial};
use crate::pi_multiple::PiMultiple;
use crate::rational::{factorial, pow_i, rat, rat_i, sign_pow, two_pow, Rational};
use crate::request::{EvalRequest, Omega};
use crate::sequences::{bernoulli, euler_number, euler_poly};
use crate::series::PowerSeries;
use crate::{Error, Result};

/// Exact Taylor data of sin and cosec at a = pi j / N.
pub struct TrigTable {
    pub modulus: u64,
    pub j: u64,
    pub sin_a: Cyclotomic,
    pub cos_a: Cyclotomic,
    t_bullet: Vec<Cyclotomic>,
    t_star: Vec<Cyclotomic>,
}

impl TrigTable {
    /// n-th Taylor coefficient (times n!) of sin(a + t).
    pub fn t_bullet(&self, n: usize) -> &Cyclotomic {
        &self.t_bullet[n]
    }

    /// n-th Taylor coefficient (times n!) of cosec(a + t).
    pub fn t_star(&self, n: usize) -> &Cyclotomic {
        &self.t_star[n]
    }

    pub fn t(&self, omega: Omega, n: usize) -> &Cyclotomic {
        match omega {
            Omega::Bullet => self.t_bullet(n),
            Omega::Star => self.t_star(n),
        }
    }

    pub fn len(&self) -> usize {
        self.t_bullet.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t_bullet.is_empty()
    }
}

/// Builds the table for a = pi j / N with 1 <= j <= (N-1)/2, N >= 3.
/// The sine coefficients alternate between sin(a) and cos(a) with a
/// four-periodic sign; cosec comes from power-series inversion.
pub fn trig_table(modulus: u64, j: u64, n_max: usize) -> Result<TrigTable> {
    if modulus < 3 {
        return Err(Error::InvalidRequest(format!(
            "trig tables need modulus >= 3, got {modulus}"
        )));
    }
    if j < 1 || j > (modulus - 1) / 2 {
        return Err(Error::InvalidRequest(format!(
            "angle index {j} out of range for modulus {modulus}"
        )));
    }
    let order = lcm(2 * modulus, 4);
    let zeta = Cyclotomic::root_of_unity(2 * modulus, j as i64)?.embed(order)?;
    let zeta_inv = zeta.conj();
    let i_unit = Cyclotomic::root_of_unity(4, 1)?.embed(order)?;
    let two_i_inv = i_unit.scale(&rat_i(2)).inv()?;
    let sin_a = zeta.sub(&zeta_inv).mul(&two_i_inv);
    let cos_a = zeta.add(&zeta_inv).scale(&rat(1, 2));
    debug_assert!(!sin_a.is_zero());

    let mut t_bullet = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let tri = if n % 2 == 0 { &sin_a } else { &cos_a };
        let sign = if (n * (n.saturating_sub(1)) / 2) % 2 == 0 {
            rat_i(1)
        } else {
            rat_i(-1)
        };
        t_bullet.push(tri.scale(&sign));
    }

    // cosec(a + t) is the reciprocal series of sin(a + t).
    let sin_series = PowerSeries::from_coeffs(
        order,
        t_bullet
            .iter()
            .enumerate()
            .map(|(n, c)| c.scale(&Rational::new(1.into(), factorial(n as u64))))
            .collect(),
    )?;
    let cosec_series = sin_series.inv()?;
    let t_star = cosec_series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.scale(&Rational::from_integer(factorial(n as u64))))
        .collect();

    Ok(TrigTable {
        modulus,
        j,
        sin_a,
        cos_a,
        t_bullet,
        t_star,
    })
}

type TrigCache = Mutex<HashMap<(u64, u64), std::sync::Arc<TrigTable>>>;

fn cached_trig_table(modulus: u64, j: u64, n_max: usize) -> Result<std::sync::Arc<TrigTable>> {
    static CACHE: OnceLock<TrigCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let guard = cache.lock().unwrap();
        if let Some(hit) = guard.get(&(modulus, j)) {
            if hit.len() > n_max {
                return Ok(hit.clone());
            }
        }
    }
    // Grow in chunks so repeated slightly-larger requests don't thrash.
    let table = std::sync::Arc::new(trig_table(modulus, j, n_max.max(8) * 2)?);
    let mut guard = cache.lock().unwrap();
    let entry = guard.entry((modulus, j)).or_insert_with(|| table.clone());
    if entry.len() <= n_max {
        *entry = table;
    }
    Ok(entry.clone())
}

/// Inner multinomial sum attached to one angle pi j / N: compositions of n
/// into kappa parts, multinomial weights, Taylor coefficients, and a
/// kappa-th root of unity raised to sum(l * n_l).
fn a_inner_fresh(
    omega: Omega,
    modulus: u64,
    j: u64,
    kappa: u64,
    n: u64,
    visits: &mut u64,
) -> Result<Cyclotomic> {
    let table = cached_trig_table(modulus, j, n as usize)?;
    let trig_order = lcm(2 * modulus, 4);
    let order = lcm(trig_order, kappa);
    let mut acc = Cyclotomic::zero(order);
    for parts in compositions(n, kappa) {
        *visits += 1;
        let m = multinomial(n, &parts)?;
        let mut prod = Cyclotomic::from_rational(Rational::from_integer(m));
        let mut root_exp = 0u64;
        for (l, &nl) in parts.iter().enumerate() {
            prod = prod.mul(table.t(omega, nl as usize));
            root_exp = (root_exp + (l as u64 + 1) * nl) % kappa;
        }
        let root = Cyclotomic::root_of_unity(kappa, root_exp as i64)?;
        acc = acc.add(&prod.mul(&root));
    }
    Ok(acc)
}

type InnerKey = (Omega, u64, u64, u64, u64);

fn a_inner(omega: Omega, modulus: u64, j: u64, kappa: u64, n: u64) -> Result<Cyclotomic> {
    static CACHE: OnceLock<Mutex<HashMap<InnerKey, Cyclotomic>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (omega, modulus, j, kappa, n);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut visits = 0;
    let value = a_inner_fresh(omega, modulus, j, kappa, n, &mut visits)?;
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(key).or_insert(value).clone())
}

fn check_a_args(omega: Omega, k: i64, chi: &Character) -> Result<u64> {
    let kappa = 2 * k + chi.parity() as i64;
    if kappa < 1 {
        return Err(Error::InvalidRequest(format!(
            "kappa = 2k + e(chi) = {kappa} must be >= 1"
        )));
    }
    let _ = omega;
    Ok(kappa as u64)
}

/// A-sequence coefficient for a Dirichlet character, with the tuple count
/// of the streamed composition enumeration (cache bypassed).
pub fn a_coeff_counted(
    omega: Omega,
    k: i64,
    chi: &Character,
    n: u64,
) -> Result<(Cyclotomic, u64)> {
    let kappa = check_a_args(omega, k, chi)?;
    let mut visits = 0u64;
    let value = a_coeff_impl(omega, chi, n, kappa, &mut visits, false)?;
    Ok((value, visits))
}

/// A-sequence coefficient, memoized per (family, character, k, n).
type ACoeffCache = Mutex<HashMap<(Omega, (u64, Vec<u64>), i64, u64), Cyclotomic>>;

pub fn a_coeff(omega: Omega, k: i64, chi: &Character, n: u64) -> Result<Cyclotomic> {
    static CACHE: OnceLock<ACoeffCache> = OnceLock::new();
    let kappa = check_a_args(omega, k, chi)?;
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let key = (omega, chi.cache_key(), k, n);
    if let Some(hit) = cache.lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut visits = 0u64;
    let value = a_coeff_impl(omega, chi, n, kappa, &mut visits, true)?;
    let mut guard = cache.lock().unwrap();
    Ok(guard.entry(key).or_insert(value).clone())
}

fn a_coeff_impl(
    omega: Omega,
    chi: &Character,
    n: u64,
    kappa: u64,
    visits: &mut u64,
    use_inner_cache: bool,
) -> Result<Cyclotomic> {
    let modulus = chi.modulus();
    match modulus {
        1 | 2 => {
            debug_assert_eq!(kappa % 2, 0);
            if n % 2 == 1 {
                return Ok(Cyclotomic::zero(1));
            }
            let half_k = kappa / 2;
            a_low_modulus(omega, modulus, half_k, n / 2, visits)
        }
        _ => {
            let half_n = (modulus - 1) / 2;
            let m = chi.order();
            let root_order = m * kappa;
            let mut acc = Cyclotomic::zero(lcm(lcm(2 * modulus, 4), root_order));
            // chi(j) = zeta_m^{a_j}; the branch root is zeta_{m kappa}^{a_j}
            let exps: Vec<Option<u64>> =
                (1..=half_n).map(|j| chi.value_exponent(j as i64)).collect();
            'outer: for parts in compositions(n, half_n) {
                *visits += 1;
                let mut root_exp = 0u64;
                for (idx, &nj) in parts.iter().enumerate() {
                    match exps[idx] {
                        Some(a) => root_exp = (root_exp + a * nj) % root_order,
                        None if nj > 0 => continue 'outer,
                        None => {}
                    }
                }
                let mult = multinomial(n, &parts)?;
                let mut prod = Cyclotomic::from_rational(Rational::from_integer(mult));
                for (idx, &nj) in parts.iter().enumerate() {
                    let j = idx as u64 + 1;
                    let inner = if use_inner_cache {
                        a_inner(omega, modulus, j, kappa, nj)?
                    } else {
                        a_inner_fresh(omega, modulus, j, kappa, nj, visits)?
                    };
                    prod = prod.mul(&inner);
                }
                let root = Cyclotomic::root_of_unity(root_order, root_exp as i64)?;
                acc = acc.add(&prod.mul(&root));
            }
            Ok(acc)
        }
    }
}

/// The modulus 1 and 2 cases: only even indices 2n survive, and the sum
/// runs over compositions of n into kappa/2 parts.
fn a_low_modulus(
    omega: Omega,
    modulus: u64,
    half_k: u64,
    half_n: u64,
    visits: &mut u64,
) -> Result<Cyclotomic> {
    let n = 2 * half_n;
    let mut buckets = vec![Rational::zero(); half_k as usize];
    for parts in compositions(half_n, half_k) {
        *visits += 1;
        let mut root_exp = 0u64;
        for (l, &nl) in parts.iter().enumerate() {
            root_exp = (root_exp + (l as u64 + 1) * nl) % half_k;
        }
        let weight = match (modulus, omega) {
            (1, Omega::Bullet) => {
                let expanded: Vec<u64> = parts.iter().map(|&nl| 2 * nl + 1).collect();
                Rational::from_integer(multinomial(n + half_k, &expanded)?)
            }
            (1, Omega::Star) => {
                let expanded: Vec<u64> = parts.iter().map(|&nl| 2 * nl).collect();
                let mut w = Rational::from_integer(multinomial(n, &expanded)?);
                for &nl in &parts {
                    w *= (two_pow(2 * nl as i64) - rat_i(2)) * bernoulli(2 * nl);
                }
                w
            }
            (2, Omega::Bullet) => {
                let expanded: Vec<u64> = parts.iter().map(|&nl| 2 * nl).collect();
                Rational::from_integer(multinomial(n, &expanded)?)
            }
            (2, Omega::Star) => {
                let expanded: Vec<u64> = parts.iter().map(|&nl| 2 * nl).collect();
                let mut w = Rational::from_integer(multinomial(n, &expanded)?);
                for &nl in &parts {
                    w *= Rational::from_integer(euler_number(2 * nl));
                }
                w
            }
            _ => unreachable!(),
        };
        buckets[root_exp as usize] += weight;
    }
    let mut acc = Cyclotomic::zero(half_k);
    for (e, w) in buckets.into_iter().enumerate() {
        if !w.is_zero() {
            acc = acc.add(&Cyclotomic::root_of_unity(half_k, e as i64)?.scale(&w));
        }
    }
    Ok(acc)
}

/// Closed form of the A-coefficients for the odd primitive character mod 4,
/// where the single angle pi/4 collapses the outer sum. The star-branch
/// power of sqrt(2) is 2^{(4n+kappa)/2}; at the evaluation point n = kappa d
/// this equals 2^{kappa(4d+1)/2}, which the cross-engine identity pins down.
pub fn a_chi_minus4_closed(
    omega: Omega,
    k: i64,
    n: u64,
    d_context: Option<u64>,
) -> Result<Cyclotomic> {
    if k < 0 {
        return Err(Error::InvalidRequest("k must be >= 0".into()));
    }
    let kappa = 2 * k as u64 + 1;
    if let Some(d) = d_context {
        debug_assert!(n == kappa * d, "context depth must match the index");
    }
    let order = lcm(8, kappa);
    let mut acc = Cyclotomic::zero(order);
    for parts in compositions(n, kappa) {
        let mult = Rational::from_integer(multinomial(n, &parts)?);
        let mut root_exp = 0u64;
        let mut sign_exp = 0u64;
        let mut weight = mult;
        for (l, &nl) in parts.iter().enumerate() {
            root_exp = (root_exp + (l as u64 + 1) * nl) % kappa;
            match omega {
                Omega::Bullet => sign_exp += nl * nl.saturating_sub(1) / 2,
                Omega::Star => {
                    sign_exp += nl * (nl + 1) / 2;
                    weight *= euler_poly(nl, &rat(3, 4));
                }
            }
        }
        if sign_exp % 2 == 1 {
            weight = -weight;
        }
        let root = Cyclotomic::root_of_unity(kappa, root_exp as i64)?;
        acc = acc.add(&root.scale(&weight));
    }
    let sqrt2 = Cyclotomic::sqrt_int(2);
    let prefactor = match omega {
        // 2^{-kappa/2} = sqrt(2)^kappa / 2^kappa
        Omega::Bullet => sqrt2.pow(kappa as i64)?.scale(&two_pow(-(kappa as i64))),
        // 2^{(4n+kappa)/2} = 2^{2n} sqrt(2)^kappa
        Omega::Star => sqrt2.pow(kappa as i64)?.scale(&two_pow(2 * n as i64)),
    };
    Ok(acc.mul(&prefactor))
}

/// The constant multiplying A_{kappa d} in the closed form. For modulus
/// >= 3 it contains the power (N^{2d - eps} 2^{(N-1) eps})^{kappa/2}; for
/// > odd kappa the square root lives in the same cyclotomic field as A, and
/// > only the product C * A is asserted rational/canonical.
pub fn c_constant(omega: Omega, d: u64, k: i64, chi: &Character) -> Result<Cyclotomic> {
    let kappa = check_a_args(omega, k, chi)?;
    let modulus = chi.modulus();
    let eps_d = rat_i(omega.eps_pow(d));
    match modulus {
        1 => {
            let half_k = (kappa / 2) as i64;
            let et = omega.eps_tilde();
            let sign = sign_pow((half_k as u64) * (d - et));
            let fact = factorial((2 * d + 1 - et) * half_k as u64);
            Ok(Cyclotomic::from_rational(
                eps_d * sign / Rational::from_integer(fact),
            ))
        }
        2 => {
            let half_k = kappa / 2;
            let sign = sign_pow(half_k * d);
            let fact = factorial(2 * half_k * d);
            Ok(Cyclotomic::from_rational(
                eps_d * sign * two_pow(-((2 * half_k * d) as i64)) / Rational::from_integer(fact),
            ))
        }
        _ => {
            let eps = omega.eps(); // -1 or 1
            let sign = sign_pow(kappa * d);
            // base = N^{2d - eps} * 2^{(N-1) eps}, a positive rational
            let base = pow_i(&rat_i(modulus as i64), 2 * d as i64 - eps)
                * pow_i(&rat_i(2), (modulus as i64 - 1) * eps);
            let whole = pow_i(&base, (kappa / 2) as i64);
            let mut denom = Cyclotomic::from_rational(whole);
            if kappa % 2 == 1 {
                let num = Cyclotomic::sqrt_int(base.numer().try_into().map_err(|_| {
                    Error::InvalidRequest("constant base too large".into())
                })?);
                let den = Cyclotomic::sqrt_int(base.denom().try_into().map_err(|_| {
                    Error::InvalidRequest("constant base too large".into())
                })?);
                denom = denom.mul(&num.mul(&den.inv()?));
            }
            let fact = Rational::from_integer(factorial(kappa * d));
            Ok(denom
                .inv()?
                .scale(&(eps_d * sign / fact)))
        }
    }
}

/// The closed-form value C * A_{kappa d} * pi^{kappa d}.
pub fn eval_formula_ii(req: &EvalRequest) -> Result<PiMultiple> {
    let kappa = req.kappa();
    let d = req.depth;
    let c = c_constant(req.omega, d, req.k, &req.chi)?;
    let a = a_coeff(req.omega, req.k, &req.chi, kappa * d)?;
    Ok(PiMultiple::new(c.mul(&a), kappa * d))
}

/// Alternating-numerator values at even arguments via the convolution of
/// the modulus-1 and modulus-2 A-sequences.
pub fn a_alternating(omega: Omega, k: i64, n: u64) -> Result<Cyclotomic> {
    if k < 1 {
        return Err(Error::InvalidRequest("alternating needs k >= 1".into()));
    }
    if n % 2 == 1 {
        return Ok(Cyclotomic::zero(1));
    }
    let half_n = n / 2;
    let k_u = k as u64;
    let pad = (1 - omega.eps_tilde()) * k_u;
    let one_mod_1 = Character::principal(1);
    let one_mod_2 = Character::principal(2);
    let mut acc = Cyclotomic::zero(2 * k_u);
    for p in 0..=half_n {
        let q = half_n - p;
        let weight = Rational::from_integer(crate::rational::binomial(n + pad, 2 * p));
        let a2 = a_coeff(omega, k, &one_mod_2, 2 * p)?;
        let a1 = a_coeff(omega, k, &one_mod_1, 2 * q)?;
        let root = Cyclotomic::root_of_unity(2 * k_u, p as i64)?;
        acc = acc.add(&a2.mul(&a1).mul(&root).scale(&weight));
    }
    Ok(acc)
}

/// Alternating value at equal even arguments 2k, depth d.
pub fn eval_alternating_genfun(omega: Omega, d: u64, k: i64) -> Result<PiMultiple> {
    if k < 1 || d == 0 {
        return Err(Error::InvalidRequest(
            "alternating evaluation needs k >= 1, d >= 1".into(),
        ));
    }
    let k_u = k as u64;
    let et = omega.eps_tilde();
    let a = a_alternating(omega, k, 2 * k_u * d)?;
    let sign = rat_i(omega.eps_pow(d)) * sign_pow(k_u * (d - et));
    let denom = two_pow(2 * k_u as i64 * d as i64)
        * Rational::from_integer(factorial((2 * d + 1 - et) * k_u));
    Ok(PiMultiple::new(a.scale(&(sign / denom)), 2 * k_u * d))
}

/// One sample point of the infinite-product check.
pub struct ProductCheckPoint {
    pub t: Rational,
    pub lhs: (f64, f64),
    pub rhs: (f64, f64),
    pub deviation: f64,
}

pub struct ProductCheckReport {
    pub points: Vec<ProductCheckPoint>,
    pub max_deviation: f64,
    pub tail_bound: f64,
    pub truncation: u64,
}

/// Numeric spot-check of the product identities: the truncated infinite
/// product over (1 - chi(n) t^kappa / n^kappa) against the closed
/// sine/cosine product, at rational sample points |t| < 1.
pub fn product_identity_check(
    chi: &Character,
    k: i64,
    sample_points: &[Rational],
    truncation: u64,
) -> Result<ProductCheckReport> {
    let kappa = check_a_args(Omega::Bullet, k, chi)?;
    let modulus = chi.modulus();
    // complex character values per residue, reused across the product
    let values: Vec<ExtComplex> = (0..modulus.max(1))
        .map(|r| chi.value(r as i64).to_complex())
        .collect();
    let pi = Ext::pi();

    let mut points = Vec::new();
    let mut max_deviation = 0f64;
    let mut tail_bound = 0f64;
    for t_rat in sample_points {
        let t = Ext::from_rational(t_rat);
        // left: truncated product with a first-order tail correction
        let mut lhs = ExtComplex::one();
        let t_pow = ExtComplex::from_re(t.powi(kappa));
        for n in 1..=truncation {
            let v = &values[(n % modulus.max(1)) as usize];
            if v.is_zero() {
                continue;
            }
            let scale = Ext::from_u64(n).powi(kappa).recip();
            let factor = ExtComplex::one().sub(&t_pow.mul(v).scale(&scale));
            lhs = lhs.mul(&factor);
        }
        // log tail ~ -sum_{n > T} chi(n) (t/n)^kappa, estimated per residue
        // by integral midpoints for kappa >= 2
        let mut corr = ExtComplex::zero();
        let mut err_corr = 0f64;
        if kappa >= 2 {
            for r in 1..=modulus.max(1) {
                let v = &values[(r % modulus.max(1)) as usize];
                if v.is_zero() {
                    continue;
                }
                let (est, err) = hurwitz_tail(truncation, modulus.max(1), r, kappa);
                corr = corr.add(&v.scale(&est));
                err_corr += err;
            }
            let t_abs = t.abs().to_f64().powi(kappa as i32);
            corr = corr.scale(&t.powi(kappa)).neg();
            err_corr *= t_abs;
            // second order of the logarithm
            err_corr += t_abs * t_abs * (truncation as f64).powi(1 - 2 * kappa as i32);
            lhs = lhs.mul(&exp_complex(&corr));
        } else {
            err_corr = 4.0 * modulus as f64 / truncation as f64;
        }

        // right-hand closed form
        let rhs = match modulus {
            1 => {
                let half_k = kappa / 2;
                let mut acc = ExtComplex::one();
                for l in 1..=half_k {
                    let root = Cyclotomic::root_of_unity(kappa, l as i64)?.to_complex();
                    let z = root.scale(&pi.mul(&t));
                    acc = acc.mul(&z.sin_complex().div(&z));
                }
                acc
            }
            2 => {
                let half_k = kappa / 2;
                let mut acc = ExtComplex::one();
                for l in 1..=half_k {
                    let root = Cyclotomic::root_of_unity(kappa, l as i64)?.to_complex();
                    let z = root.scale(&pi.mul(&t).mul(&Ext::from_rational(&rat(1, 2))));
                    acc = acc.mul(&cos_complex(&z));
                }
                acc
            }
            _ => {
                let half_n = (modulus - 1) / 2;
                // (N^{-1} 2^{N-1})^{kappa/2}
                let base = Ext::from_u64(2)
                    .powi(modulus - 1)
                    .div(&Ext::from_u64(modulus));
                let prefactor = base.sqrt().powi(kappa);
                let mut acc = ExtComplex::from_re(prefactor);
                for j in 1..=half_n {
                    let branch = match chi.value_exponent(j as i64) {
                        Some(_) => char_value_root(chi, j as i64, kappa)?.to_complex(),
                        None => ExtComplex::zero(),
                    };
                    for l in 1..=kappa {
                        let root = Cyclotomic::root_of_unity(kappa, l as i64)?.to_complex();
                        let offset = branch.mul(&root).scale(&t);
                        let arg = ExtComplex::from_re(Ext::from_u64(j))
                            .sub(&offset)
                            .scale(&pi.div(&Ext::from_u64(modulus)));
                        acc = acc.mul(&arg.sin_complex());
                    }
                }
                acc
            }
        };
        let diff = lhs.sub(&rhs);
        let deviation = diff.abs().to_f64();
        max_deviation = max_deviation.max(deviation);
        tail_bound = tail_bound.max(err_corr + 1e-30);
        points.push(ProductCheckPoint {
            t: t_rat.clone(),
            lhs: lhs.to_f64_pair(),
            rhs: rhs.to_f64_pair(),
            deviation,
        });
    }
    Ok(ProductCheckReport {
        points,
        max_deviation,
        tail_bound,
        truncation,
    })
}

/// Midpoint integral estimate of sum_{m > cutoff, m = r mod period}
/// m^{-s}, with a bound on its error.
fn hurwitz_tail(cutoff: u64, period: u64, r: u64, s: u64) -> (Ext, f64) {
    // first index m0 > cutoff with m0 = r mod period
    let mut m0 = (cutoff / period) * period + r;
    while m0 <= cutoff {
        m0 += period;
    }
    let m0e = Ext::from_u64(m0);
    let h0 = m0e.powi(s).recip();
    // integral_{m0}^inf x^{-s} dx / period = m0^{1-s} / (period (s-1))
    let integral = m0e
        .powi(s - 1)
        .recip()
        .div(&Ext::from_u64(period * (s - 1)));
    let est = integral.add(&h0.mul(&Ext::from_rational(&rat(1, 2))));
    (est, h0.to_f64() / 2.0)
}

fn exp_complex(z: &ExtComplex) -> ExtComplex {
    let m = z.re.exp();
    ExtComplex {
        re: m.mul(&z.im.cos()),
        im: m.mul(&z.im.sin()),
    }
}

fn cos_complex(z: &ExtComplex) -> ExtComplex {
    // cos z = sin(z + pi/2)
    let shifted = ExtComplex {
        re: z.re.add(&Ext::pi().mul(&Ext::from_rational(&rat(1, 2)))),
        im: z.im.clone(),
    };
    shifted.sin_complex()
}
