//! Exact spherical Whittaker functions on the metaplectic double cover of
//! `GSp(2n)` over a p-adic field of odd residual characteristic, together with
//! the classification data of unramified genuine principal series.
//!
//! Layout:
//! - [`field_arith`]: square classes, Hilbert symbols, the Weil index `γ_ψ`.
//! - [`weyl`] and [`laurent`]: the type `C_n` Weyl group acting on exact
//!   Laurent polynomials, alternators and division by the Weyl denominator.
//! - [`torus`]: diagonal elements of the metaplectic cover and their cocycle.
//! - [`characters`]: unramified genuine characters, `E(ω)`, `R(ω)` and the
//!   reducibility classifier.
//! - [`whittaker`]: closed-form spherical Whittaker functions and the
//!   symmetric spanning set built from them.
//! - [`cli`]: the batch command-line surface.

pub mod characters;
pub mod cli;
pub mod exact;
pub mod field_arith;
pub mod laurent;
pub mod linalg;
pub mod selfcheck;
pub mod torus;
pub mod weyl;
pub mod whittaker;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("polynomial is not alternating under the Weyl group")]
    NotAlternating,
    #[error("polynomial is not divisible by the Weyl denominator")]
    NonDivisible,
    #[error("quadratic twist by a ramified class leaves the unramified family")]
    TwistNotUnramified,
    #[error("operation requires {0}")]
    Unsupported(String),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),
}

impl Error {
    /// Short machine-readable tag used in structured CLI errors.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidConfig(_) => "invalid_config",
            Error::Parse(_) => "parse",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NotAlternating => "not_alternating",
            Error::NonDivisible => "non_divisible",
            Error::TwistNotUnramified => "twist_not_unramified",
            Error::Unsupported(_) => "unsupported",
            Error::InvariantViolation(_) => "invariant_violation",
        }
    }

    /// Whether the error signals a bug rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::NotAlternating | Error::NonDivisible | Error::InvariantViolation(_)
        )
    }
}
