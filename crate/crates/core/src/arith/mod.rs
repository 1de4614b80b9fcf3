//! Exact coefficient fields (ℚ, 𝔽_p, rational function fields, simple extensions)
//! and dense univariate polynomials over them.

mod descriptor;
mod elem;
mod factor;
mod field;
pub mod intutil;
mod irreducible;
mod upoly;

pub use descriptor::parse_field;
pub(crate) use elem::format_sum;
pub use elem::{rational, FieldElem};
pub use factor::EXHAUSTIVE_PRIME_LIMIT;
pub use field::{Field, FieldDesc, MAX_TOWER_HEIGHT};
pub use irreducible::is_square;
pub use upoly::UPoly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid extension: {0}")]
    InvalidExtension(String),
    #[error("invalid symbol name: {0}")]
    InvalidSymbol(String),
    #[error("field tower too tall: {0}")]
    TowerTooTall(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("modulus {0} is reducible")]
    ReducibleModulus(String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("invalid field descriptor {text:?} at {pos}: {msg}")]
    BadDescriptor {
        text: String,
        pos: usize,
        msg: String,
    },
}
