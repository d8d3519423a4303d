//! Exact symbolic computation on the quantum disc `O(D_{q,γ})`, its
//! `ℤ_N`-fixed-point subalgebras (quantum cones `O(C^N_{q,γ})`) and their
//! differential calculi.
//!
//! Everything symbolic lives over the rational function field ℚ(q, γ)
//! ([`scalar`]). The disc algebra ([`disc`]) is handled through its PBW
//! basis `z^i z*^j`; the cone ([`cone`]) is embedded into it. Differential
//! forms ([`calculus`]) are kept in left normal form over the free basis
//! `dz`, `dz*`, `dz∧dz*`, and [`conecalc`] builds the complex structure on
//! the cone from them. [`fock`] is a floating-point oracle based on the
//! weighted-shift representation.
//!
//! ```
//! use qcone::disc::DiscElement;
//!
//! let z = DiscElement::z();
//! let zs = DiscElement::zs();
//! assert_eq!((&zs * &z).to_string(), "q*z*zs + g");
//! ```

pub mod calculus;
pub mod cone;
pub mod conecalc;
pub mod disc;
pub mod fock;
pub mod report;
pub mod scalar;

pub use calculus::CalcElement;
pub use cone::ConeElement;
pub use disc::{DiscElement, DiscMonomial};
pub use scalar::{q_integer, Scalar, UniPoly};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator of {scalar} vanishes at q = {q}, g = {gamma}")]
    VanishingDenominator {
        scalar: String,
        q: String,
        gamma: String,
    },
    #[error("extended gcd of two zero polynomials")]
    BothZero,
    #[error("cyclic order must be at least 2, got {0}")]
    InvalidOrder(u32),
    #[error("cone elements of different orders {0} and {1}")]
    OrderMismatch(u32, u32),
    #[error("term {term} has Z_{n}-degree {degree}, expected {expected}")]
    WrongDegree {
        term: String,
        n: u32,
        degree: u32,
        expected: u32,
    },
    #[error("expected a pure (1,0)-form f*dz, got {0}")]
    NotPure10(String),
    #[error("cone forms must have invariant coefficients: {0}")]
    NotInvariant(String),
    #[error("gcd of X_{n} and Y_{n} is not constant: {gcd}")]
    NonconstantGcd { n: u32, gcd: String },
    #[error("check failed: {0}")]
    CheckFailed(String),
    #[error("truncation dimension {dim} too small for total degree {degree}")]
    DimensionTooSmall { dim: usize, degree: u32 },
    #[error("invalid Fock parameters: {0}")]
    InvalidFockParameters(String),
}

/// Validate a cyclic order `N ≥ 2`.
pub fn check_order(n: u32) -> Result<u32, Error> {
    if n < 2 {
        Err(Error::InvalidOrder(n))
    } else {
        Ok(n)
    }
}

/// Forward owned/borrowed combinations of a binary operator to the
/// `&T op &T` implementation.
macro_rules! forward_binop {
    ($t:ty: $($tr:ident $m:ident),*) => {$(
        impl std::ops::$tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { std::ops::$tr::$m(&self, &rhs) }
        }
        impl std::ops::$tr<&$t> for $t {
            type Output = $t;
            fn $m(self, rhs: &$t) -> $t { std::ops::$tr::$m(&self, rhs) }
        }
        impl std::ops::$tr<$t> for &$t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { std::ops::$tr::$m(self, &rhs) }
        }
    )*};
}
pub(crate) use forward_binop;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/scalars.md")]
    mod scalars {}
    #[doc = include_str!("../../../book/src/disc.md")]
    mod disc {}
    #[doc = include_str!("../../../book/src/cone.md")]
    mod cone {}
    #[doc = include_str!("../../../book/src/calculus.md")]
    mod calculus {}
    #[doc = include_str!("../../../book/src/complex-structure.md")]
    mod complex_structure {}
    #[doc = include_str!("../../../book/src/fock.md")]
    mod fock {}
    #[doc = include_str!("../../../README.md")]
    mod readme {}
}
