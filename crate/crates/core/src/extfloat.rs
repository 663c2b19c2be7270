//! Extended-precision real and complex floats.
//!
//! Thin wrapper around `astro_float::BigFloat` at a fixed 192-bit working
//! precision (~57 decimal digits), so numeric tolerances in the oracle are
//! dominated by truncation, never by rounding.

use std::cell::RefCell;
use std::cmp::Ordering;

use astro_float::{BigFloat, Consts, RoundingMode};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::rational::Rational;

pub const PRECISION_BITS: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

#[derive(Clone, Debug)]
pub struct Ext(BigFloat);

impl Ext {
    pub fn zero() -> Self {
        Ext(BigFloat::from_i64(0, PRECISION_BITS))
    }

    pub fn one() -> Self {
        Ext(BigFloat::from_i64(1, PRECISION_BITS))
    }

    pub fn from_i64(n: i64) -> Self {
        Ext(BigFloat::from_i64(n, PRECISION_BITS))
    }

    pub fn from_u64(n: u64) -> Self {
        Ext(BigFloat::from_u64(n, PRECISION_BITS))
    }

    pub fn from_f64(x: f64) -> Self {
        Ext(BigFloat::from_f64(x, PRECISION_BITS))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        if let Some(v) = n.to_i64() {
            return Self::from_i64(v);
        }
        let mut acc = Ext::zero();
        let (sign, digits) = n.to_radix_be(256);
        let chunk = Ext::from_i64(256);
        for d in digits {
            acc = acc.mul(&chunk).add(&Ext::from_i64(d as i64));
        }
        if sign == num_bigint::Sign::Minus {
            acc = acc.neg();
        }
        acc
    }

    pub fn from_rational(r: &Rational) -> Self {
        Self::from_bigint(r.numer()).div(&Self::from_bigint(r.denom()))
    }

    pub fn pi() -> Self {
        Ext(with_consts(|cc| cc.pi(PRECISION_BITS, RM)))
    }

    /// 2*pi*a/b, exactly rounded from the constant.
    pub fn two_pi_times(a: i64, b: i64) -> Self {
        Ext::pi()
            .mul(&Ext::from_i64(2 * a))
            .div(&Ext::from_i64(b))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Ext(self.0.add(&rhs.0, PRECISION_BITS, RM))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Ext(self.0.sub(&rhs.0, PRECISION_BITS, RM))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Ext(self.0.mul(&rhs.0, PRECISION_BITS, RM))
    }

    pub fn div(&self, rhs: &Self) -> Self {
        Ext(self.0.div(&rhs.0, PRECISION_BITS, RM))
    }

    pub fn recip(&self) -> Self {
        Ext(self.0.reciprocal(PRECISION_BITS, RM))
    }

    pub fn neg(&self) -> Self {
        Ext(self.0.neg())
    }

    pub fn abs(&self) -> Self {
        Ext(self.0.abs())
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Ext::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// self^e for real e (self > 0).
    pub fn powf(&self, e: &Self) -> Self {
        Ext(with_consts(|cc| self.0.pow(&e.0, PRECISION_BITS, RM, cc)))
    }

    pub fn sqrt(&self) -> Self {
        Ext(self.0.sqrt(PRECISION_BITS, RM))
    }

    pub fn exp(&self) -> Self {
        Ext(with_consts(|cc| self.0.exp(PRECISION_BITS, RM, cc)))
    }

    pub fn ln(&self) -> Self {
        Ext(with_consts(|cc| self.0.ln(PRECISION_BITS, RM, cc)))
    }

    pub fn sin(&self) -> Self {
        Ext(with_consts(|cc| self.0.sin(PRECISION_BITS, RM, cc)))
    }

    pub fn cos(&self) -> Self {
        Ext(with_consts(|cc| self.0.cos(PRECISION_BITS, RM, cc)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn compare(&self, rhs: &Self) -> Ordering {
        match self.0.cmp(&rhs.0) {
            Some(c) if c < 0 => Ordering::Less,
            Some(c) if c > 0 => Ordering::Greater,
            _ => Ordering::Equal,
        }
    }

    pub fn max(&self, rhs: &Self) -> Self {
        if self.compare(rhs) == Ordering::Greater {
            self.clone()
        } else {
            rhs.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.0.is_zero() {
            return 0.0;
        }
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let (words, _p, sign, exp, _) = self.0.as_raw_parts().expect("finite");
        let n = words.len();
        let mut mant = words[n - 1] as f64 / 2f64.powi(64);
        if n >= 2 {
            mant += words[n - 2] as f64 / 2f64.powi(128);
        }
        let mut v = mant * 2f64.powi(exp);
        if sign == astro_float::Sign::Neg {
            v = -v;
        }
        v
    }
}

#[derive(Clone, Debug)]
pub struct ExtComplex {
    pub re: Ext,
    pub im: Ext,
}

impl ExtComplex {
    pub fn zero() -> Self {
        ExtComplex {
            re: Ext::zero(),
            im: Ext::zero(),
        }
    }

    pub fn one() -> Self {
        ExtComplex {
            re: Ext::one(),
            im: Ext::zero(),
        }
    }

    pub fn from_re(re: Ext) -> Self {
        ExtComplex {
            re,
            im: Ext::zero(),
        }
    }

    pub fn from_f64_pair(re: f64, im: f64) -> Self {
        ExtComplex {
            re: Ext::from_f64(re),
            im: Ext::from_f64(im),
        }
    }

    /// cos(angle) + i sin(angle).
    pub fn from_polar_unit(angle: &Ext) -> Self {
        ExtComplex {
            re: angle.cos(),
            im: angle.sin(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        ExtComplex {
            re: self.re.add(&rhs.re),
            im: self.im.add(&rhs.im),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        ExtComplex {
            re: self.re.sub(&rhs.re),
            im: self.im.sub(&rhs.im),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        ExtComplex {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn scale(&self, s: &Ext) -> Self {
        ExtComplex {
            re: self.re.mul(s),
            im: self.im.mul(s),
        }
    }

    pub fn neg(&self) -> Self {
        ExtComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn conj(&self) -> Self {
        ExtComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let den = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        let num = self.mul(&rhs.conj());
        ExtComplex {
            re: num.re.div(&den),
            im: num.im.div(&den),
        }
    }

    pub fn recip(&self) -> Self {
        Self::one().div(self)
    }

    pub fn powi(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn abs(&self) -> Ext {
        self.re
            .mul(&self.re)
            .add(&self.im.mul(&self.im))
            .sqrt()
    }

    /// sin of a complex argument: sin(x) cosh(y) + i cos(x) sinh(y),
    /// with cosh/sinh assembled from exp.
    pub fn sin_complex(&self) -> Self {
        let ey = self.im.exp();
        let emy = ey.recip();
        let half = Ext::from_rational(&crate::rational::rat(1, 2));
        let cosh = ey.add(&emy).mul(&half);
        let sinh = ey.sub(&emy).mul(&half);
        ExtComplex {
            re: self.re.sin().mul(&cosh),
            im: self.re.cos().mul(&sinh),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn f64_round_trip() {
        for x in [0.0, 1.0, -1.5, 3.141592653589793, 1e-12, -2.75e9] {
            assert_eq!(Ext::from_f64(x).to_f64(), x);
        }
    }

    #[test]
    fn rational_conversion() {
        let r = rat(1, 3);
        let x = Ext::from_rational(&r).to_f64();
        assert!((x - 1.0 / 3.0).abs() < 1e-16);
        let big = Rational::new(
            "123456789012345678901234567890".parse().unwrap(),
            "7".parse().unwrap(),
        );
        let x = Ext::from_rational(&big).to_f64();
        assert!((x / (1.2345678901234568e29 / 7.0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn pi_and_trig() {
        let pi = Ext::pi().to_f64();
        assert!((pi - std::f64::consts::PI).abs() < 1e-15);
        let s = Ext::pi().div(&Ext::from_i64(6)).sin().to_f64();
        assert!((s - 0.5).abs() < 1e-15);
    }

    #[test]
    fn complex_ops() {
        let i = ExtComplex::from_f64_pair(0.0, 1.0);
        let m = i.mul(&i);
        assert!((m.re.to_f64() + 1.0).abs() < 1e-15 && m.im.to_f64().abs() < 1e-15);
        let q = ExtComplex::from_f64_pair(3.0, 4.0);
        assert!((q.abs().to_f64() - 5.0).abs() < 1e-14);
        let r = q.div(&q);
        assert!((r.re.to_f64() - 1.0).abs() < 1e-15 && r.im.to_f64().abs() < 1e-15);
    }

    #[test]
    fn complex_sin() {
        // sin(1 + 2i) = 3.1657... + 1.9596...i
        let z = ExtComplex::from_f64_pair(1.0, 2.0);
        let s = z.sin_complex();
        assert!((s.re.to_f64() - 3.165778513216168).abs() < 1e-12);
        assert!((s.im.to_f64() - 1.959601041421606).abs() < 1e-12);
    }
}
