//! Exact arithmetic in cyclotomic fields Q(zeta_M).
//!
//! An element is stored as its unique representative of degree < phi(M) in
//! the power basis 1, zeta, ..., zeta^{phi(M)-1}, reduced modulo the M-th
//! cyclotomic polynomial. Canonical form makes equality structural.
//! Elements of different orders embed into the lcm order on demand.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::extfloat::{Ext, ExtComplex};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::{Error, Result};

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut phi = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            phi *= pk - pk / p;
        }
        p += 1;
    }
    if n > 1 {
        phi *= n - 1;
    }
    phi
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

pub fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Coefficients of the M-th cyclotomic polynomial, constant term first,
/// monic. Computed by dividing x^M - 1 by the cyclotomic polynomials of the
/// proper divisors of M; memoized once per order.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    let computed = Arc::new(compute_cyclotomic_polynomial(m));
    let mut guard = cache.lock().unwrap();
    guard.entry(m).or_insert(computed).clone()
}

fn compute_cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    assert!(m >= 1);
    if m == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^m - 1
    let mut num = vec![BigInt::zero(); (m + 1) as usize];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        num = exact_int_poly_div(&num, &phi_d);
    }
    num
}

/// Exact division of integer polynomials (remainder known to be zero),
/// divisor monic.
fn exact_int_poly_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = num.len() - 1;
    let dd = den.len() - 1;
    debug_assert!(den[dd].is_one());
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut rem[i]);
        for (j, dc) in den.iter().enumerate().take(dd) {
            let delta = &c * dc;
            rem[i - dd + j] -= delta;
        }
        quot[i - dd] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// An element of Q(zeta_M) in canonical power-basis form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<Rational>, // length phi(order)
}

impl Cyclotomic {
    pub fn zero(order: u64) -> Self {
        Cyclotomic {
            order,
            coeffs: vec![Rational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational_in(Rational::one(), order)
    }

    pub fn from_rational(r: Rational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_rational_in(r: Rational, order: u64) -> Self {
        let mut c = Self::zero(order);
        c.coeffs[0] = r;
        c
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(crate::rational::rat_i(n))
    }

    /// zeta_order^a, a taken mod order. Rejects order 0.
    pub fn root_of_unity(order: u64, a: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder);
        }
        let a = a.rem_euclid(order as i64) as u64;
        let mut dense = vec![Rational::zero(); order as usize];
        dense[a as usize] = Rational::one();
        Ok(Self::reduce_dense(order, dense))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Some(r) iff the canonical form has no component outside the basis
    /// element 1, i.e. the value is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Reduces a dense coefficient vector indexed by exponent 0..order
    /// (degree < order) to canonical form mod the cyclotomic polynomial.
    fn reduce_dense(order: u64, mut dense: Vec<Rational>) -> Self {
        debug_assert_eq!(dense.len(), order as usize);
        let phi = euler_phi(order) as usize;
        if order == 1 {
            return Cyclotomic {
                order,
                coeffs: dense,
            };
        }
        let cp = cyclotomic_polynomial(order);
        for i in (phi..order as usize).rev() {
            if dense[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut dense[i], Rational::zero());
            for (j, pc) in cp.iter().enumerate().take(phi) {
                if !pc.is_zero() {
                    let delta = &c * Rational::from_integer(pc.clone());
                    dense[i - phi + j] -= delta;
                }
            }
        }
        dense.truncate(phi);
        Cyclotomic {
            order,
            coeffs: dense,
        }
    }

    /// Re-expresses the element in a larger order; new_order must be a
    /// multiple of the current order.
    pub fn embed(&self, new_order: u64) -> Result<Self> {
        if !new_order.is_multiple_of(self.order) {
            return Err(Error::InvalidRequest(format!(
                "cannot embed order {} into order {}",
                self.order, new_order
            )));
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = (new_order / self.order) as usize;
        let mut dense = vec![Rational::zero(); new_order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[i * step] = c.clone();
            }
        }
        Ok(Self::reduce_dense(new_order, dense))
    }

    fn common_order(&self, rhs: &Self) -> (Self, Self, u64) {
        let l = lcm(self.order, rhs.order);
        (
            self.embed(l).expect("lcm embedding"),
            rhs.embed(l).expect("lcm embedding"),
            l,
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.order == rhs.order {
            let coeffs = self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect();
            return Cyclotomic {
                order: self.order,
                coeffs,
            };
        }
        let (a, b, _) = self.common_order(rhs);
        a.add(&b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.order != rhs.order {
            let (a, b, _) = self.common_order(rhs);
            return a.mul(&b);
        }
        let m = self.order as usize;
        // Convolve, wrapping exponents mod M (valid since zeta^M = 1),
        // then reduce mod the cyclotomic polynomial once.
        let mut dense = vec![Rational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let k = (i + j) % m;
                dense[k] += a * b;
            }
        }
        Self::reduce_dense(self.order, dense)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the cyclotomic polynomial (irreducible, so any nonzero element is a
    /// unit).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational_in(r.recip(), self.order));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let (g, s) = poly_half_ext_gcd(&modulus, &self.coeffs);
        // g is a nonzero constant; inverse = s / g.
        debug_assert_eq!(poly_degree(&g), Some(0));
        let ginv = g[0].recip();
        let mut dense = vec![Rational::zero(); self.order as usize];
        for (i, c) in s.iter().enumerate() {
            dense[i] = c * &ginv;
        }
        Ok(Self::reduce_dense(self.order, dense))
    }

    /// Galois automorphism zeta -> zeta^t, gcd(t, order) = 1.
    pub fn galois(&self, t: u64) -> Result<Self> {
        let t = t % self.order;
        if gcd(t, self.order) != 1 {
            return Err(Error::NotCoprime {
                j: t as i64,
                n: self.order,
            });
        }
        let mut dense = vec![Rational::zero(); self.order as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let k = (i as u64 * t % self.order) as usize;
                dense[k] += c;
            }
        }
        Ok(Self::reduce_dense(self.order, dense))
    }

    /// Complex conjugation: zeta -> zeta^{-1}. Fixes rationals.
    pub fn conj(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        self.galois(self.order - 1).expect("order-1 is coprime")
    }

    /// Integer power of either sign.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Equality as field values, independent of the declared orders.
    pub fn value_eq(&self, rhs: &Self) -> bool {
        if self.order == rhs.order {
            return self == rhs;
        }
        let (a, b, _) = self.common_order(rhs);
        a == b
    }

    /// sqrt(n) for a non-negative integer n, exactly, as an element of a
    /// cyclotomic field: square roots of primes come from quadratic Gauss
    /// sums (sqrt(2) from zeta_8 + zeta_8^-1).
    pub fn sqrt_int(n: u64) -> Self {
        if n == 0 {
            return Self::zero(1);
        }
        let mut square_part = BigInt::one();
        let mut acc = Self::from_int(1);
        for (p, e) in prime_factors(n) {
            square_part *= BigInt::from(p).pow(e / 2);
            if e % 2 == 1 {
                acc = acc.mul(&sqrt_prime(p));
            }
        }
        acc.scale(&Rational::from_integer(square_part))
    }

    /// Numeric embedding zeta_M -> exp(2 pi i / M) in extended precision.
    pub fn to_complex(&self) -> ExtComplex {
        let mut acc = ExtComplex::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = Ext::two_pi_times(i as i64, self.order as i64);
            let term = ExtComplex::from_polar_unit(&angle).scale(&Ext::from_rational(c));
            acc = acc.add(&term);
        }
        acc
    }

    /// Numeric embedding as an (re, im) pair of f64, with a conservative
    /// bound on the absolute error of the pair.
    pub fn to_f64_pair(&self) -> (f64, f64, f64) {
        let z = self.to_complex();
        let mag: f64 = self
            .coeffs
            .iter()
            .map(|c| {
                let n = c.numer().to_string().len() as i32;
                let d = c.denom().to_string().len() as i32;
                10f64.powi(n - d + 1)
            })
            .sum();
        // 192-bit working precision leaves ~1e-57 relative error per term;
        // f64 conversion dominates at ~1e-16 relative.
        let err = mag * 1e-15 + 1e-300;
        (z.re.to_f64(), z.im.to_f64(), err)
    }
}

fn sqrt_prime(p: u64) -> Cyclotomic {
    if p == 2 {
        let z = Cyclotomic::root_of_unity(8, 1).unwrap();
        return z.add(&z.conj());
    }
    // Quadratic Gauss sum: sum_a (a|p) zeta_p^a equals sqrt(p) for
    // p = 1 mod 4 and i*sqrt(p) for p = 3 mod 4.
    let mut is_square = vec![false; p as usize];
    for a in 1..p {
        is_square[(a * a % p) as usize] = true;
    }
    let mut dense = vec![Rational::zero(); p as usize];
    for a in 1..p {
        dense[a as usize] = if is_square[a as usize] {
            Rational::one()
        } else {
            -Rational::one()
        };
    }
    let g = Cyclotomic::reduce_dense(p, dense);
    if p % 4 == 1 {
        g
    } else {
        let minus_i = Cyclotomic::root_of_unity(4, 3).unwrap();
        g.mul(&minus_i)
    }
}

fn poly_degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Half-extended gcd over Q[x]: returns (g, s) with s*b = g mod a,
/// g = gcd(a, b).
fn poly_half_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    let mut s0 = vec![Rational::zero()];
    let mut s1 = vec![Rational::one()];
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_div_rem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

fn poly_div_rem(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_degree(den).expect("nonzero divisor");
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let dn = match poly_degree(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &lead;
        rem[i] = Rational::zero();
        for (j, dc) in den.iter().enumerate().take(dd) {
            if !dc.is_zero() {
                let delta = &c * dc;
                rem[i - dd + j] -= delta;
            }
        }
        quot[i - dd] = c;
    }
    (quot, rem)
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

impl std::fmt::Display for Cyclotomic {
    /// Renders as a rational when possible, else as a polynomial in z = zeta_M.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", format_rational(&r));
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let piece = if i == 0 {
                format_rational(c)
            } else {
                let mag = c.abs();
                let var = if i == 1 {
                    format!("z{}", self.order)
                } else {
                    format!("z{}^{}", self.order, i)
                };
                if mag.is_one() {
                    var
                } else {
                    format!("{}*{}", format_rational(&mag), var)
                }
            };
            if first {
                if i > 0 && c.numer().is_negative() {
                    write!(f, "-")?;
                }
                write!(f, "{}", piece)?;
                first = false;
            } else if i == 0 {
                write!(f, " + {}", piece)?;
            } else if c.numer().is_negative() {
                write!(f, " - {}", piece)?;
            } else {
                write!(f, " + {}", piece)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Wire form: `{"order": M, "coeffs": ["p/q", ...]}` with coefficient i
/// attached to zeta_M^i.
#[derive(Serialize, Deserialize)]
pub struct CyclotomicJson {
    pub order: u64,
    pub coeffs: Vec<String>,
}

impl From<&Cyclotomic> for CyclotomicJson {
    fn from(c: &Cyclotomic) -> Self {
        CyclotomicJson {
            order: c.order,
            coeffs: c.coeffs.iter().map(format_rational).collect(),
        }
    }
}

impl TryFrom<&CyclotomicJson> for Cyclotomic {
    type Error = Error;
    fn try_from(j: &CyclotomicJson) -> Result<Cyclotomic> {
        if j.order == 0 {
            return Err(Error::InvalidOrder);
        }
        if j.coeffs.len() != euler_phi(j.order) as usize {
            return Err(Error::InvalidRequest(format!(
                "expected {} coefficients for order {}",
                euler_phi(j.order),
                j.order
            )));
        }
        let coeffs = j
            .coeffs
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Cyclotomic {
            order: j.order,
            coeffs,
        })
    }
}
