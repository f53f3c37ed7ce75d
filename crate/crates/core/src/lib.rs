//! Exact arithmetic for representation numbers of the quadratic forms
//!
//! ```text
//!     x_1^2 + ... + x_a^2 + 3 y_1^2 + ... + 3 y_b^2
//! ```
//!
//! and for the Eisenstein part of their theta series.  Everything is computed
//! over exact rationals; no floating point enters any identity check.
//!
//! Module map:
//!
//! * [`character`] - the four real primitive Dirichlet characters of
//!   conductor 1, 3, 4, 12 and their generalized Bernoulli numbers.
//! * [`divisor`] - twisted divisor sums `sigma_k(eps, psi; n)` and the
//!   identities they satisfy.
//! * [`qseries`] - dense q-expansions with exact rational coefficients,
//!   eta quotients, and the theta series `phi`, `Psi8`.
//! * [`counts`] - the representation numbers `N`, `N*`, `Ntilde` by lattice
//!   enumeration and by series convolution.
//! * [`eisenstein`] - Eisenstein series `E_k(dz; eps, psi)`, basis
//!   enumeration, Sturm bounds.
//! * [`decomposition`] - the explicit Eisenstein combinations equal to
//!   `Psi8^a(z) Psi8^b(3z)` and `phi^a(z) phi^b(3z)` up to a cusp form, the
//!   coefficient functions `alpha`, `beta`, and the cusp remainders.
//! * [`verify`] - machine checks of the exact identities `N* = c N`, the
//!   alpha/beta relations, ratio convergence, and cusp growth.

pub mod character;
pub mod counts;
pub mod decomposition;
pub mod divisor;
pub mod eisenstein;
pub mod qseries;
pub mod verify;

pub use character::Character;
pub use counts::{count, count_series, triangular_count, CountQuery, Variant};
pub use decomposition::{alpha, beta, DecompositionPlan, FormParams, ParityCase, Side};
pub use eisenstein::{enumerate_basis, sturm_bound, EisCombination, EisTerm, SpaceSignature};
pub use qseries::{eta_quotient_series, phi_series, psi8_series, EtaQuotient, QSeries};
pub use verify::{Status, VerificationReport};

use num_bigint::BigInt;
use num_rational::BigRational;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// A generalized Bernoulli number `B_{k,chi}` was requested with
    /// `chi(-1) != (-1)^k`; the number vanishes and is never wanted here.
    #[error("parity mismatch: chi(-1) != (-1)^{weight} for character of discriminant {discriminant}")]
    ParityMismatch { weight: u32, discriminant: i64 },
    /// A claimed prime factorization is not one.
    #[error("invalid factorization: {reason}")]
    InvalidFactorization { reason: &'static str },
    /// An eta quotient whose leading q-power is not a non-negative integer
    /// cannot be expanded as an integral q-series.
    #[error("eta quotient has leading q-power {twentyfourths}/24, not a non-negative integer")]
    FractionalValuation { twentyfourths: i64 },
    /// Basis enumeration is only wired up for the spaces this crate uses.
    #[error("no basis enumeration for weight {weight}, level {level}, character discriminant {discriminant}")]
    UnsupportedSpace { weight: u32, level: u64, discriminant: i64 },
    /// The exponent pair (a, b) is outside the supported family.
    #[error("unsupported exponents a={a}, b={b}: {reason}")]
    UnsupportedParams { a: u32, b: u32, reason: &'static str },
    /// A documented precondition of an operation was violated.
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    /// An identity check whose right-hand side vanishes at every tested index
    /// can neither be verified nor refuted.
    #[error("degenerate claim: right-hand side vanishes at every index below depth {depth}")]
    DegenerateClaim { depth: u64 },
    /// A ratio scan found no admissible index at all.
    #[error("no admissible index below {n_max}")]
    NoAdmissibleIndex { n_max: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;

/// The rational `p/q`.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// The integer `n` as a rational.
pub fn rat_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// `base^exp` as a big integer, for small non-negative exponents.
pub fn ipow(base: i64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}
