//! Logarithmic derivatives over the purely inseparable tower
//! `F_p(α) ⊂ F_p(α)(γ)`, `γᵖ = α`, and the separation of ideal classes by
//! Samuel's criterion.
//!
//! The base field is `F_p(α)` with `α` transcendental, a computable
//! imperfect field. The criterion is only applied in its one-sided form: a
//! nonconstant difference of log-derivatives separates two classes when the
//! unit log-derivatives are known to be constants. Ideals of the normal ring
//! are not represented, so classes are compared through this test alone.

mod derivation;
mod field;
mod poly;
mod separation;

use thiserror::Error;

use crate::integer::prime_power;

pub use derivation::{delta, delta_w, log_derivative};
pub use field::{FieldElement, PrimePoly, RationalFunction, TowerElement};
pub use poly::{Poly, WPolynomial};
pub use separation::{
    check_w_identities, class_separator, desk_scale_class_count, desk_scale_report, samuel_criterion,
    verify_w_identities, DeskScaleReport, PairSeparation, SamuelVerdict, Separation, WIdentityCheck,
};

/// Largest `q` accepted.
pub const MAX_Q: u64 = 25;
/// Largest `W`-degree produced.
pub const MAX_W_DEGREE: usize = 200;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InseparableError {
    #[error("q > 2 required (got q = {q})")]
    QTooSmall { q: u64 },
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
    #[error("q = {q} is not a power of p = {p}")]
    NotPowerOfP { p: u64, q: u64 },
    #[error("size guard exceeded: q = {q} > {MAX_Q}")]
    QGuard { q: u64 },
    #[error("size guard exceeded: W-degree {degree} > {MAX_W_DEGREE}")]
    DegreeGuard { degree: usize },
    #[error("logarithmic derivative of zero")]
    ZeroInput,
    #[error("the two constants coincide")]
    EqualInputs,
    #[error("δ(c^r) ≠ c^r − c^(rq) for c = {0}")]
    Precondition(String),
    #[error("log-derivative of W − c^r is not a polynomial")]
    NotPolynomial,
    #[error("field characteristic {found} does not match p = {expected}")]
    CharacteristicMismatch { expected: u64, found: u64 },
}

impl InseparableError {
    pub fn is_guard(&self) -> bool {
        matches!(self, InseparableError::QGuard { .. } | InseparableError::DegreeGuard { .. })
    }
}

/// `q = pᵉ` with `e ≥ 1` and `q ≤ MAX_Q`; returns `r = q/p`.
pub(crate) fn check_prime_power(p: u64, q: u64) -> Result<u64, InseparableError> {
    if prime_power(p) != Some((p, 1)) {
        return Err(InseparableError::NotPrime { p });
    }
    if q > MAX_Q {
        return Err(InseparableError::QGuard { q });
    }
    match prime_power(q) {
        Some((base, _)) if base == p => Ok(q / p),
        _ => Err(InseparableError::NotPowerOfP { p, q }),
    }
}

/// As [`check_prime_power`], additionally requiring `q > 2`.
pub(crate) fn check_q(p: u64, q: u64) -> Result<u64, InseparableError> {
    if q <= 2 {
        return Err(InseparableError::QTooSmall { q });
    }
    check_prime_power(p, q)
}
