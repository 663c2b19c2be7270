//! Evaluation requests shared by both exact engines.

use crate::characters::Character;
use crate::{Error, Result};

/// Whether index tuples are strictly or weakly increasing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Omega {
    Bullet,
    Star,
}

impl Omega {
    /// eps_omega: -1 for bullet, +1 for star.
    pub fn eps(self) -> i64 {
        match self {
            Omega::Bullet => -1,
            Omega::Star => 1,
        }
    }

    /// (eps_omega + 1)/2: 0 for bullet, 1 for star.
    pub fn eps_tilde(self) -> u64 {
        match self {
            Omega::Bullet => 0,
            Omega::Star => 1,
        }
    }

    /// eps^omega_mu: the partition sign for bullet, 1 for star.
    pub fn eps_mu(self, eps_mu: i64) -> i64 {
        match self {
            Omega::Bullet => eps_mu,
            Omega::Star => 1,
        }
    }

    /// eps_omega^d.
    pub fn eps_pow(self, d: u64) -> i64 {
        match self {
            Omega::Bullet => {
                if d.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            Omega::Star => 1,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "bullet" => Ok(Omega::Bullet),
            "star" => Ok(Omega::Star),
            other => Err(Error::InvalidRequest(format!(
                "omega must be 'bullet' or 'star', got {other:?}"
            ))),
        }
    }
}

impl std::fmt::Display for Omega {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Omega::Bullet => write!(f, "bullet"),
            Omega::Star => write!(f, "star"),
        }
    }
}

/// A request to evaluate the depth-d value at equal arguments
/// kappa = 2k + e(chi), every component carrying the same character.
#[derive(Clone, Debug)]
pub struct EvalRequest {
    pub omega: Omega,
    pub depth: u64,
    pub k: i64,
    pub chi: Character,
}

impl EvalRequest {
    pub fn new(omega: Omega, depth: u64, k: i64, chi: Character) -> Result<Self> {
        let req = EvalRequest {
            omega,
            depth,
            k,
            chi,
        };
        req.validate()?;
        Ok(req)
    }

    pub fn kappa(&self) -> u64 {
        (2 * self.k + self.chi.parity() as i64) as u64
    }

    fn validate(&self) -> Result<()> {
        if self.depth == 0 {
            return Err(Error::InvalidRequest("depth must be >= 1".into()));
        }
        let kappa = 2 * self.k + self.chi.parity() as i64;
        if kappa < 1 {
            return Err(Error::InvalidRequest(format!(
                "kappa = 2k + e(chi) = {kappa} must be >= 1"
            )));
        }
        if kappa == 1 && self.chi.is_principal() {
            return Err(Error::InvalidRequest(
                "kappa = 1 needs a non-principal character for convergence".into(),
            ));
        }
        Ok(())
    }
}
