//! The Dirichlet character group mod N with exact cyclotomic values.
//!
//! The unit group (Z/N)* is decomposed via CRT into cyclic factors with a
//! fixed generator convention (modulus 2^e >= 8 uses {-1, 5}; odd prime
//! powers use the smallest primitive root; factors ordered 2 first, then odd
//! primes ascending). A character is the vector of exponents it assigns to
//! those generators, which makes powers and evaluation O(1) after a
//! one-time discrete-log table per modulus.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{gcd, lcm, prime_factors, Cyclotomic};
use crate::partitions::Partition;
use crate::rational::{pow_i, rat_i, Rational};
use crate::{Error, Result};

#[derive(Debug)]
struct UnitGen {
    residue: u64,
    order: u64,
}

/// Generator basis and discrete-log table for (Z/N)*.
#[derive(Debug)]
pub struct UnitBasis {
    modulus: u64,
    gens: Vec<UnitGen>,
    exponent: u64, // lcm of generator orders
    dlog: HashMap<u64, Vec<u64>>,
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, n);
        }
        a = mul_mod(a, a, n);
        e >>= 1;
    }
    acc
}

fn multiplicative_order(a: u64, n: u64) -> u64 {
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    k
}

/// x = r1 mod m1, x = r2 mod m2 for coprime moduli.
fn crt(r1: u64, m1: u64, r2: u64, m2: u64) -> u64 {
    let (g, inv) = ext_gcd_inv(m1 % m2, m2);
    debug_assert_eq!(g, 1);
    let diff = (r2 as i128 - r1 as i128).rem_euclid(m2 as i128) as u64;
    r1 + m1 * mul_mod(diff, inv, m2)
}

/// Returns (gcd(a, n), a^{-1} mod n) when the gcd is 1.
fn ext_gcd_inv(a: u64, n: u64) -> (u64, u64) {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 as u64, s0.rem_euclid(n as i128) as u64)
}

fn primitive_root(pk: u64, p: u64) -> u64 {
    let phi = crate::cyclotomic::euler_phi(pk);
    (2..pk)
        .find(|&g| g % p != 0 && multiplicative_order(g, pk) == phi)
        .expect("odd prime powers have primitive roots")
}

fn build_unit_basis(n: u64) -> UnitBasis {
    let mut gens: Vec<UnitGen> = Vec::new();
    if n > 1 {
        for (p, e) in prime_factors(n) {
            let pk = p.pow(e);
            let rest = n / pk;
            let lift = |r: u64| if rest == 1 { r } else { crt(r, pk, 1, rest) };
            if p == 2 {
                match e {
                    1 => {}
                    2 => gens.push(UnitGen {
                        residue: lift(3),
                        order: 2,
                    }),
                    _ => {
                        gens.push(UnitGen {
                            residue: lift(pk - 1),
                            order: 2,
                        });
                        gens.push(UnitGen {
                            residue: lift(5),
                            order: pk / 4,
                        });
                    }
                }
            } else {
                gens.push(UnitGen {
                    residue: lift(primitive_root(pk, p)),
                    order: crate::cyclotomic::euler_phi(pk),
                });
            }
        }
    }
    let exponent = gens.iter().fold(1u64, |acc, g| lcm(acc, g.order));
    // Enumerate the direct product once to get discrete logs.
    let mut dlog = HashMap::new();
    let total: u64 = gens.iter().map(|g| g.order).product();
    for idx in 0..total {
        let mut rem = idx;
        let mut tuple = vec![0u64; gens.len()];
        let mut residue = 1u64 % n.max(1);
        for (i, g) in gens.iter().enumerate().rev() {
            tuple[i] = rem % g.order;
            rem /= g.order;
            residue = mul_mod(residue, pow_mod(g.residue, tuple[i], n), n);
        }
        dlog.insert(residue, tuple);
    }
    if n == 1 {
        dlog.insert(0, Vec::new());
    }
    UnitBasis {
        modulus: n,
        gens,
        exponent,
        dlog,
    }
}

pub fn unit_basis(n: u64) -> Arc<UnitBasis> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<UnitBasis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let built = Arc::new(build_unit_basis(n));
    let mut guard = cache.lock().unwrap();
    guard.entry(n).or_insert(built).clone()
}

/// A Dirichlet character mod N, identified by the exponents it assigns to
/// the fixed generator basis of the unit group.
#[derive(Clone)]
pub struct Character {
    basis: Arc<UnitBasis>,
    exps: Vec<u64>,
    order: u64,
    parity: u8,
    conductor: u64,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.modulus() == other.modulus() && self.exps == other.exps
    }
}
impl Eq for Character {}

impl std::hash::Hash for Character {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.modulus().hash(state);
        self.exps.hash(state);
    }
}

impl std::fmt::Debug for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Character({})", self.label())
    }
}

impl Character {
    fn from_exps(basis: Arc<UnitBasis>, exps: Vec<u64>) -> Self {
        debug_assert_eq!(exps.len(), basis.gens.len());
        let order = basis
            .gens
            .iter()
            .zip(&exps)
            .fold(1u64, |acc, (g, &e)| lcm(acc, g.order / gcd(g.order, e)));
        let mut chi = Character {
            basis,
            exps,
            order,
            parity: 0,
            conductor: 1,
        };
        chi.parity = chi.compute_parity();
        chi.conductor = chi.compute_conductor();
        chi
    }

    pub fn principal(n: u64) -> Self {
        let basis = unit_basis(n);
        let exps = vec![0; basis.gens.len()];
        Self::from_exps(basis, exps)
    }

    /// All characters mod N: exactly phi(N) of them, ordered
    /// lexicographically by exponent vector; the principal character first.
    pub fn characters_mod(n: u64) -> Vec<Character> {
        let basis = unit_basis(n);
        let orders: Vec<u64> = basis.gens.iter().map(|g| g.order).collect();
        let total: u64 = orders.iter().product();
        let width = orders.len();
        let mut out = Vec::with_capacity(total as usize);
        for idx in 0..total {
            // rightmost digit fastest = lexicographic ascending
            let mut rem = idx;
            let mut exps = vec![0u64; width];
            for i in (0..width).rev() {
                exps[i] = rem % orders[i];
                rem /= orders[i];
            }
            out.push(Character::from_exps(basis.clone(), exps));
        }
        out
    }

    /// Position of this character in `characters_mod` order.
    pub fn index(&self) -> u64 {
        let mut idx = 0u64;
        for (g, &e) in self.basis.gens.iter().zip(&self.exps) {
            idx = idx * g.order + e;
        }
        idx
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// e(chi): 0 when chi(-1) = 1, otherwise 1.
    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus()
    }

    pub fn is_real(&self) -> bool {
        self.order <= 2
    }

    fn compute_parity(&self) -> u8 {
        let n = self.modulus();
        if n <= 2 {
            return 0;
        }
        match self.value_exponent((n - 1) as i64) {
            Some(0) => 0,
            Some(_) => 1,
            None => unreachable!("-1 is a unit"),
        }
    }

    fn compute_conductor(&self) -> u64 {
        let n = self.modulus();
        'divisors: for f in crate::cyclotomic::divisors(n) {
            let mut x = 1 + f;
            while x < n {
                if gcd(x, n) == 1 && self.value_exponent(x as i64) != Some(0) {
                    continue 'divisors;
                }
                x += f;
            }
            return f;
        }
        n
    }

    /// The exponent a with chi(j) = zeta_order^a (canonical 0 <= a < order),
    /// or None when chi(j) = 0.
    pub fn value_exponent(&self, j: i64) -> Option<u64> {
        let n = self.modulus();
        if n == 1 {
            return Some(0);
        }
        let j = j.rem_euclid(n as i64) as u64;
        let tuple = self.basis.dlog.get(&j)?;
        let big_l = self.basis.exponent;
        let mut v = 0u64;
        for ((g, &e), &x) in self.basis.gens.iter().zip(&self.exps).zip(tuple) {
            // contribution e*x*(L/o) mod L, with e*x first reduced mod o
            let exo = mul_mod(e, x, g.order);
            v = (v + mul_mod(exo, big_l / g.order, big_l)) % big_l;
        }
        let step = big_l / self.order;
        debug_assert_eq!(v % step, 0);
        Some(v / step)
    }

    /// chi(j) as an exact element of Q(zeta_order).
    pub fn value(&self, j: i64) -> Cyclotomic {
        match self.value_exponent(j) {
            Some(a) => Cyclotomic::root_of_unity(self.order, a as i64).unwrap(),
            None => Cyclotomic::zero(self.order),
        }
    }

    /// chi^n; exponent vectors scale componentwise.
    pub fn power(&self, n: i64) -> Character {
        let exps = self
            .basis
            .gens
            .iter()
            .zip(&self.exps)
            .map(|(g, &e)| ((e as i128 * n as i128).rem_euclid(g.order as i128)) as u64)
            .collect();
        Character::from_exps(self.basis.clone(), exps)
    }

    pub fn conjugate(&self) -> Character {
        self.power(-1)
    }

    /// Conductor and the inducing primitive character.
    pub fn primitive(&self) -> Character {
        let f = self.conductor;
        let n = self.modulus();
        if f == n {
            return self.clone();
        }
        let fbasis = unit_basis(f);
        let mut exps = Vec::with_capacity(fbasis.gens.len());
        for g in &fbasis.gens {
            // lift the generator to a residue coprime to the full modulus
            let y = (0..)
                .map(|t| g.residue + t * f)
                .find(|&y| gcd(y, n) == 1)
                .expect("a coprime lift exists");
            let a = self
                .value_exponent(y as i64)
                .expect("lift is a unit mod n");
            // chi'(g) = zeta_order^a, rewritten as a power of zeta_{g.order}
            debug_assert_eq!((a * g.order) % self.order, 0);
            exps.push(a * g.order / self.order % g.order);
        }
        Character::from_exps(fbasis, exps)
    }

    /// The primitive character inducing chi^{mu_j}.
    pub fn mu_primitive(&self, mu: &Partition, j: usize) -> Character {
        self.power(mu.parts()[j] as i64).primitive()
    }

    /// Stable identity for memo tables: (modulus, generator exponents).
    pub fn cache_key(&self) -> (u64, Vec<u64>) {
        (self.modulus(), self.exps.clone())
    }

    /// Canonical CLI label.
    pub fn label(&self) -> String {
        if self.is_principal() {
            format!("principal:{}", self.modulus())
        } else {
            format!("mod:{}:index:{}", self.modulus(), self.index())
        }
    }
}

/// Kronecker symbol (a|n) for n >= 1.
pub fn kronecker_symbol(a: i64, n: u64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let e = n.trailing_zeros();
    let m = n >> e;
    let mut t = if e == 0 {
        1
    } else if a % 2 == 0 {
        0
    } else {
        let r = a.rem_euclid(8);
        let unit = if r == 1 || r == 7 { 1 } else { -1 };
        if e.is_multiple_of(2) {
            1
        } else {
            unit
        }
    };
    if t == 0 {
        return 0;
    }
    t *= jacobi(a, m);
    t
}

/// Jacobi symbol for odd positive m.
fn jacobi(a: i64, mut m: u64) -> i64 {
    debug_assert!(m % 2 == 1);
    let mut a = a.rem_euclid(m as i64) as u64;
    let mut t = 1i64;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if m % 8 == 3 || m % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut m);
        if a % 4 == 3 && m % 4 == 3 {
            t = -t;
        }
        a %= m;
    }
    if m == 1 {
        t
    } else {
        0
    }
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let squarefree = |x: i64| {
        let x = x.unsigned_abs();
        prime_factors(x).iter().all(|&(_, e)| e < 2)
    };
    if d.rem_euclid(4) == 1 {
        return squarefree(d);
    }
    if d % 4 == 0 {
        let m = d / 4;
        let r = m.rem_euclid(4);
        return (r == 2 || r == 3) && squarefree(m);
    }
    false
}

/// The primitive real character mod |D| attached to a fundamental
/// discriminant D, via the Kronecker symbol.
pub fn kronecker_character(d: i64) -> Result<Character> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamental(d));
    }
    let n = d.unsigned_abs();
    let basis = unit_basis(n);
    let mut exps = Vec::with_capacity(basis.gens.len());
    for g in &basis.gens {
        let v = kronecker_symbol(d, g.residue);
        debug_assert!(v == 1 || v == -1);
        exps.push(if v == 1 {
            0
        } else {
            debug_assert_eq!(g.order % 2, 0);
            g.order / 2
        });
    }
    Ok(Character::from_exps(basis, exps))
}

/// tau(chi) = sum_{a=1}^{N} chi(a) e^{2 pi i a / N}, exact in the field of
/// order lcm(N, ord chi). Computed from the defining sum.
pub fn gauss_sum(chi: &Character) -> Cyclotomic {
    let n = chi.modulus();
    let m = chi.order();
    let big_l = lcm(n, m);
    let mut dense = vec![Rational::zero(); big_l as usize];
    for a in 1..=n {
        if let Some(e) = chi.value_exponent(a as i64) {
            let idx = (e * (big_l / m) + (a % n) * (big_l / n)) % big_l;
            dense[idx as usize] += rat_i(1);
        }
    }
    dense_to_cyclotomic(big_l, dense)
}

fn dense_to_cyclotomic(order: u64, dense: Vec<Rational>) -> Cyclotomic {
    let mut acc = Cyclotomic::zero(order);
    // Rebuild through root powers to keep reduction inside `Cyclotomic`.
    let mut pending: Vec<(usize, Rational)> = dense
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect();
    for (i, c) in pending.drain(..) {
        let z = Cyclotomic::root_of_unity(order, i as i64).unwrap();
        acc = acc.add(&z.scale(&c));
    }
    acc
}

/// The finite Euler-factor correction: over primes dividing the modulus but
/// not the conductor, the product of (1 - chi'(p) p^{-s}).
pub fn euler_factor_alpha(chi: &Character, s: u64) -> Cyclotomic {
    let prim = chi.primitive();
    let mut acc = Cyclotomic::one(prim.order());
    for (p, _) in prime_factors(chi.modulus()) {
        if prim.modulus().is_multiple_of(p) {
            continue;
        }
        let chi_p = prim.value(p as i64);
        let factor = Cyclotomic::one(prim.order())
            .sub(&chi_p.scale(&pow_i(&rat_i(p as i64), -(s as i64))));
        acc = acc.mul(&factor);
    }
    acc
}

/// W_mu(s; chi) = prod_j alpha_{chi^{mu_j}}(s mu_j).
pub fn w_mu(mu: &Partition, s: u64, chi: &Character) -> Cyclotomic {
    let mut acc = Cyclotomic::from_int(1);
    for &part in mu.parts() {
        acc = acc.mul(&euler_factor_alpha(&chi.power(part as i64), s * part));
    }
    acc
}

/// The principal kappa-th root of chi(j) under the branch
/// 0 <= arg chi(j) < 2 pi: chi(j) = zeta_m^a with 0 <= a < m maps to
/// zeta_{m kappa}^a.
pub fn char_value_root(chi: &Character, j: i64, kappa: u64) -> Result<Cyclotomic> {
    match chi.value_exponent(j) {
        Some(a) => Cyclotomic::root_of_unity(chi.order() * kappa, a as i64),
        None => Err(Error::NotCoprime {
            j,
            n: chi.modulus(),
        }),
    }
}

/// Wire form: `{"modulus": N, "label": ..., "order": m, "parity": e,
/// "conductor": f}`.
#[derive(Serialize, Deserialize)]
pub struct CharacterJson {
    pub modulus: u64,
    pub label: String,
    pub order: u64,
    pub parity: u8,
    pub conductor: u64,
}

impl From<&Character> for CharacterJson {
    fn from(chi: &Character) -> Self {
        CharacterJson {
            modulus: chi.modulus(),
            label: chi.label(),
            order: chi.order(),
            parity: chi.parity(),
            conductor: chi.conductor(),
        }
    }
}

/// Parses `principal:N`, `kronecker:D`, or `mod:N:index:i`.
pub fn parse_label(label: &str) -> Result<Character> {
    let parts: Vec<&str> = label.split(':').collect();
    let bad = || Error::InvalidRequest(format!("unknown character label {label:?}"));
    match parts.as_slice() {
        ["principal", n] => {
            let n: u64 = n.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            Ok(Character::principal(n))
        }
        ["kronecker", d] => {
            let d: i64 = d.parse().map_err(|_| bad())?;
            kronecker_character(d)
        }
        ["mod", n, "index", i] => {
            let n: u64 = n.parse().map_err(|_| bad())?;
            let i: u64 = i.parse().map_err(|_| bad())?;
            if n == 0 {
                return Err(bad());
            }
            let all = Character::characters_mod(n);
            all.into_iter()
                .nth(i as usize)
                .ok_or_else(|| Error::InvalidRequest(format!("index {i} out of range mod {n}")))
        }
        _ => Err(bad()),
    }
}
