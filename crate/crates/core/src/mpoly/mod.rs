//! Sparse multivariate polynomials, term orders, linear forms and the text grammar.

mod linear;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use linear::{essential_rank, reduce_to_binary, BinaryForm, EssentialRank, LinearForm};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::{parse_point, parse_poly, parse_scalar, ParseError, MAX_EXPONENT};
pub use poly::MPoly;
pub use ring::Ring;

use thiserror::Error;

use crate::arith::ArithError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MPolyError {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("{0}")]
    NotHomogeneous(String),
    #[error("essential rank {0} exceeds 2")]
    RankTooLarge(usize),
    #[error("bad variable: {0}")]
    BadVariable(String),
    #[error("expected {expected} coordinates, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
