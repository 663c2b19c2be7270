//! Exact evaluation of multiple Dirichlet L-values at equal integer arguments.
//!
//! Everything exact in this crate lives in a cyclotomic field: values are
//! represented as a canonical coefficient vector over the power basis of
//! Q(zeta_M), optionally times an integer power of pi ([`PiMultiple`]).
//! Two independent closed-form evaluators are provided, one summing over
//! integer partitions ([`partition_engine`]) and one reading Taylor
//! coefficients off infinite products ([`genfun_engine`]), together with
//! central limit values at non-positive arguments ([`central`]) and a
//! floating-point truncated-series oracle ([`oracle`]) used as an
//! implementation-independent check.
//!
//! ```
//! use multizeta_core::characters::Character;
//! use multizeta_core::genfun_engine::eval_formula_ii;
//! use multizeta_core::partition_engine::eval_formula_i;
//! use multizeta_core::{EvalRequest, Omega};
//!
//! // the weak double value at argument 2 is 7/360 * pi^4, by both routes
//! let req = EvalRequest::new(Omega::Star, 2, 1, Character::principal(1)).unwrap();
//! let value = eval_formula_i(&req).unwrap();
//! assert!(value.value_eq(&eval_formula_ii(&req).unwrap()));
//! assert_eq!(value.to_string(), "7/360 * pi^4");
//! ```

pub mod rational;
pub mod cyclotomic;
pub mod series;
pub mod pi_multiple;
pub mod partitions;
pub mod sequences;
pub mod characters;
pub mod request;
pub mod partition_engine;
pub mod genfun_engine;
pub mod central;
pub mod extfloat;
pub mod oracle;

pub use cyclotomic::Cyclotomic;
pub use pi_multiple::PiMultiple;
pub use rational::Rational;
pub use request::{EvalRequest, Omega};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cyclotomic order must be positive")]
    InvalidOrder,
    #[error("division by zero in a cyclotomic field")]
    DivisionByZero,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("argument {j} is not coprime to the modulus {n}")]
    NotCoprime { j: i64, n: u64 },
    #[error("multinomial parts sum to {got}, expected {expected}")]
    BadMultinomial { expected: u64, got: u64 },
    #[error("power series truncations differ: {0} vs {1}")]
    TruncationMismatch(usize, usize),
    #[error("power series inversion needs a nonzero constant term")]
    NonInvertibleSeries,
    #[error("power series exponential needs a zero constant term")]
    NonZeroConstantTerm,
    #[error("invalid evaluation request: {0}")]
    InvalidRequest(String),
    #[error("series diverges: {0}")]
    Divergent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
}

pub type Result<T> = std::result::Result<T, Error>;
