//! Homogeneous polynomials over `Q` in a fixed number of variables `x0..xN`.

mod homopoly;
mod json;
mod monomial;
mod parse;

pub use homopoly::{lcm_degree, poly_combine, HomoPoly, LcmDegree};
pub use json::{PolyJson, TermJson};
pub use monomial::{monomials_of_degree, Monomial};
pub use parse::parse_poly;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {position}: expected {expected}")]
    SyntaxError { position: usize, expected: String },
    #[error("polynomial is not homogeneous: found terms of degree {first} and {second}")]
    NotHomogeneous { first: u32, second: u32 },
    #[error("variable x{index} out of range for {num_vars} variables")]
    VariableOutOfRange { index: usize, num_vars: usize },
    #[error("expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("degree mismatch: {first} vs {second}")]
    DegreeMismatch { first: u32, second: u32 },
    #[error("ambient mismatch: {first} vs {second} variables")]
    AmbientMismatch { first: usize, second: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
}

impl PolyError {
    pub fn name(&self) -> &'static str {
        match self {
            PolyError::SyntaxError { .. } => "SyntaxError",
            PolyError::NotHomogeneous { .. } => "NotHomogeneous",
            PolyError::VariableOutOfRange { .. } => "VariableOutOfRange",
            PolyError::DimensionMismatch { .. } => "DimensionMismatch",
            PolyError::DegreeMismatch { .. } => "DegreeMismatch",
            PolyError::AmbientMismatch { .. } => "AmbientMismatch",
            PolyError::EmptyInput => "EmptyInput",
            PolyError::ZeroPolynomial => "ZeroPolynomial",
        }
    }
}
