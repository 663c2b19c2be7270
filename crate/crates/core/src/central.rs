//! Central limit values at equal non-positive integer arguments.
//!
//! The generating function of the depth-d values at arguments -kappa is the
//! exponential of a series whose coefficients are generalized Bernoulli
//! numbers of powers of the character; the value is read off the t^d
//! coefficient, so truncation d is exact.

use crate::characters::Character;
use crate::cyclotomic::Cyclotomic;
use crate::partitions::binomial_rational;
use crate::rational::{rat, rat_i, Rational};
use crate::request::Omega;
use crate::sequences::gen_bernoulli;
use crate::series::PowerSeries;
use crate::{Error, Result};

/// A request for the value at arguments {-kappa}^d, kappa = 2k + e(chi) >= 0.
#[derive(Clone, Debug)]
pub struct CentralRequest {
    pub omega: Omega,
    pub depth: u64,
    pub k: i64,
    pub chi: Character,
}

impl CentralRequest {
    pub fn new(omega: Omega, depth: u64, k: i64, chi: Character) -> Result<Self> {
        if depth == 0 {
            return Err(Error::InvalidRequest("depth must be >= 1".into()));
        }
        let kappa = 2 * k + chi.parity() as i64;
        if kappa < 0 {
            return Err(Error::InvalidRequest(format!(
                "central values need kappa = {kappa} >= 0"
            )));
        }
        Ok(CentralRequest {
            omega,
            depth,
            k,
            chi,
        })
    }

    pub fn kappa(&self) -> u64 {
        (2 * self.k + self.chi.parity() as i64) as u64
    }
}

/// eps_omega^d times the t^d coefficient of
/// exp(-eps_omega sum_{n>=1} B_{n kappa + 1, chi^n} / (n (n kappa + 1)) t^n).
pub fn central_value(req: &CentralRequest) -> Result<Cyclotomic> {
    let kappa = req.kappa();
    let d = req.depth;
    let order = req.chi.order();
    let mut coeffs = vec![Cyclotomic::zero(order)];
    for n in 1..=d {
        let chi_n = req.chi.power(n as i64);
        let b = gen_bernoulli(n * kappa + 1, &chi_n);
        let scale = rat_i(-req.omega.eps())
            / (rat_i(n as i64) * rat_i((n * kappa) as i64 + 1));
        coeffs.push(b.scale(&scale));
    }
    let series = PowerSeries::from_coeffs(order, coeffs)?;
    let exp = series.exp()?;
    Ok(exp
        .coeff(d as usize)
        .scale(&rat_i(req.omega.eps_pow(d))))
}

/// Closed form for the trivial character at kappa = 0:
/// eps^d (-1)^d binom(eps/2, d).
pub fn central_closed_form_n1(omega: Omega, d: u64) -> Rational {
    let eps_half = rat(omega.eps(), 2);
    let sign = rat_i(omega.eps_pow(d)) * crate::rational::sign_pow(d);
    sign * binomial_rational(&eps_half, d)
}
