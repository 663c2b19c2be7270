//! The value model for closed-form results: an exact cyclotomic coefficient
//! times an integer power of pi.

use serde::{Deserialize, Serialize};

use crate::cyclotomic::{Cyclotomic, CyclotomicJson};
use crate::extfloat::{Ext, ExtComplex};

#[derive(Clone, Debug, PartialEq)]
pub struct PiMultiple {
    pub coefficient: Cyclotomic,
    pub pi_exponent: u64,
}

impl PiMultiple {
    /// Rational coefficients are stored in the order-1 field, so equal
    /// values built through different working orders print identically.
    pub fn new(coefficient: Cyclotomic, pi_exponent: u64) -> Self {
        let coefficient = match coefficient.as_rational() {
            Some(r) => Cyclotomic::from_rational(r),
            None => coefficient,
        };
        PiMultiple {
            coefficient,
            pi_exponent,
        }
    }

    pub fn zero_like(&self) -> Self {
        PiMultiple {
            coefficient: Cyclotomic::zero(self.coefficient.order()),
            pi_exponent: self.pi_exponent,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    /// Equality as values: zero regardless of exponent, otherwise equal
    /// exponent and cyclotomic equality across orders.
    pub fn value_eq(&self, rhs: &Self) -> bool {
        if self.is_zero() && rhs.is_zero() {
            return true;
        }
        self.pi_exponent == rhs.pi_exponent && self.coefficient.value_eq(&rhs.coefficient)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        PiMultiple {
            coefficient: self.coefficient.mul(&rhs.coefficient),
            pi_exponent: self.pi_exponent + rhs.pi_exponent,
        }
    }

    pub fn to_complex(&self) -> ExtComplex {
        self.coefficient
            .to_complex()
            .scale(&Ext::pi().powi(self.pi_exponent))
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        self.to_complex().to_f64_pair()
    }
}

impl std::fmt::Display for PiMultiple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.pi_exponent == 0 {
            return write!(f, "{}", self.coefficient);
        }
        if self.coefficient.as_rational().is_some() {
            write!(f, "{} * pi^{}", self.coefficient, self.pi_exponent)
        } else {
            write!(f, "({}) * pi^{}", self.coefficient, self.pi_exponent)
        }
    }
}

/// Wire form used by the CLI.
#[derive(Serialize, Deserialize)]
pub struct PiMultipleJson {
    pub pi_exponent: u64,
    pub coefficient: CyclotomicJson,
    pub numeric: NumericJson,
}

#[derive(Serialize, Deserialize)]
pub struct NumericJson {
    pub re: String,
    pub im: String,
}

impl From<&PiMultiple> for PiMultipleJson {
    fn from(v: &PiMultiple) -> Self {
        let (re, im) = v.to_f64_pair();
        PiMultipleJson {
            pi_exponent: v.pi_exponent,
            coefficient: CyclotomicJson::from(&v.coefficient),
            numeric: NumericJson {
                re: format!("{re:.17e}"),
                im: format!("{im:.17e}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn display_and_numeric() {
        let v = PiMultiple::new(Cyclotomic::from_rational(rat(1, 6)), 2);
        assert_eq!(v.to_string(), "1/6 * pi^2");
        let (re, im) = v.to_f64_pair();
        assert!((re - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-13);
        assert_eq!(im, 0.0);
    }

    #[test]
    fn zero_values_compare_equal_across_exponents() {
        let a = PiMultiple::new(Cyclotomic::zero(4), 2);
        let b = PiMultiple::new(Cyclotomic::zero(1), 6);
        assert!(a.value_eq(&b));
    }
}
