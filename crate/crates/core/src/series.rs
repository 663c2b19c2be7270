//! Truncated formal power series with exact cyclotomic coefficients.
//!
//! Coefficients are stored for t^0..t^T; no operation extends the
//! truncation silently.


use crate::cyclotomic::Cyclotomic;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries {
    order: u64,
    coeffs: Vec<Cyclotomic>, // length = truncation + 1
}

impl PowerSeries {
    pub fn zero(order: u64, truncation: usize) -> Self {
        PowerSeries {
            order,
            coeffs: vec![Cyclotomic::zero(order); truncation + 1],
        }
    }

    pub fn one(order: u64, truncation: usize) -> Self {
        let mut s = Self::zero(order, truncation);
        s.coeffs[0] = Cyclotomic::one(order);
        s
    }

    /// Builds a series from coefficients (constant term first); all
    /// coefficients are embedded into `order`.
    pub fn from_coeffs(order: u64, coeffs: Vec<Cyclotomic>) -> Result<Self> {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.embed(order))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { order, coeffs })
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeff(&self, n: usize) -> &Cyclotomic {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[Cyclotomic] {
        &self.coeffs
    }

    fn check_compatible(&self, rhs: &Self) -> Result<()> {
        if self.truncation() != rhs.truncation() {
            return Err(Error::TruncationMismatch(
                self.truncation(),
                rhs.truncation(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let order = crate::cyclotomic::lcm(self.order, rhs.order);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(PowerSeries { order, coeffs })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        PowerSeries {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_compatible(rhs)?;
        let order = crate::cyclotomic::lcm(self.order, rhs.order);
        let t = self.truncation();
        let mut coeffs = vec![Cyclotomic::zero(order); t + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > t {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(PowerSeries { order, coeffs })
    }

    /// Multiplicative inverse to order t^T; requires an invertible constant
    /// term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let t = self.truncation();
        let c0 = self.coeffs[0].inv()?;
        let mut out = vec![Cyclotomic::zero(self.order); t + 1];
        out[0] = c0.clone();
        for n in 1..=t {
            let mut acc = Cyclotomic::zero(self.order);
            for j in 1..=n {
                if !self.coeffs[j].is_zero() && !out[n - j].is_zero() {
                    acc = acc.add(&self.coeffs[j].mul(&out[n - j]));
                }
            }
            out[n] = acc.mul(&c0).neg();
        }
        Ok(PowerSeries {
            order: self.order,
            coeffs: out,
        })
    }

    /// exp of a series with zero constant term, via the derivative
    /// recurrence b' = a' b (avoids factorial blowup).
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let t = self.truncation();
        let mut out = vec![Cyclotomic::zero(self.order); t + 1];
        out[0] = Cyclotomic::one(self.order);
        for n in 1..=t {
            // n * b_n = sum_{j=1}^{n} j * a_j * b_{n-j}
            let mut acc = Cyclotomic::zero(self.order);
            for j in 1..=n {
                if !self.coeffs[j].is_zero() && !out[n - j].is_zero() {
                    let term = self.coeffs[j].mul(&out[n - j]);
                    acc = acc.add(&term.scale(&crate::rational::rat_i(j as i64)));
                }
            }
            out[n] = acc.scale(&Rational::new(1.into(), (n as i64).into()));
        }
        Ok(PowerSeries {
            order: self.order,
            coeffs: out,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_i};

    fn rational_series(t: usize, f: impl Fn(usize) -> Rational) -> PowerSeries {
        PowerSeries::from_coeffs(1, (0..=t).map(|n| Cyclotomic::from_rational(f(n))).collect())
            .unwrap()
    }

    #[test]
    fn geometric_series() {
        // 1/(1 - t) = 1 + t + t^2 + ...
        let s = rational_series(6, |n| match n {
            0 => rat_i(1),
            1 => rat_i(-1),
            _ => rat_i(0),
        });
        let inv = s.inv().unwrap();
        for n in 0..=6 {
            assert_eq!(inv.coeff(n).as_rational().unwrap(), rat_i(1));
        }
    }

    #[test]
    fn exp_of_t() {
        let s = rational_series(8, |n| if n == 1 { rat_i(1) } else { rat_i(0) });
        let e = s.exp().unwrap();
        for n in 0..=8 {
            assert_eq!(
                e.coeff(n).as_rational().unwrap(),
                Rational::new(1.into(), crate::rational::factorial(n as u64))
            );
        }
    }

    #[test]
    fn exp_rejects_nonzero_constant() {
        let s = rational_series(3, |_| rat_i(1));
        assert!(matches!(s.exp(), Err(Error::NonZeroConstantTerm)));
    }

    #[test]
    fn inv_rejects_zero_constant() {
        let s = rational_series(3, |n| if n == 0 { rat_i(0) } else { rat_i(1) });
        assert!(matches!(s.inv(), Err(Error::NonInvertibleSeries)));
    }

    #[test]
    fn mul_truncates() {
        let a = rational_series(4, |n| rat_i((n + 1) as i64));
        let b = a.inv().unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p, PowerSeries::one(1, 4));
        let c = rational_series(3, |_| rat(1, 2));
        assert!(a.mul(&c).is_err());
    }
}
