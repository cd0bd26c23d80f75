//! Gröbner bases of homogeneous ideals and the invariants read off their
//! leading-term ideals: Hilbert function, projective dimension and degree.

mod basis;
mod hilbert;
mod order;

pub use basis::{groebner_basis, s_polynomial, GroebnerBasis};
pub use hilbert::{
    hilbert_function, hilbert_numerator, ideal_profile, projective_dimension, standard_monomials,
    IdealProfile, ProjDim,
};
pub use order::MonomialOrder;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("generators live in different ambient rings ({first} vs {second} variables)")]
    MixedAmbient { first: usize, second: usize },
    #[error("weight vector has {found} entries, ring has {expected} variables")]
    WeightLength { expected: usize, found: usize },
    #[error("weights must be non-negative")]
    NegativeWeight,
    #[error("Hilbert polynomial interpolation disagrees with the Hilbert series ({interpolated} vs {series})")]
    DegreeMismatch { interpolated: i128, series: i128 },
}

impl GroebnerError {
    pub fn name(&self) -> &'static str {
        match self {
            GroebnerError::MixedAmbient { .. } => "MixedAmbient",
            GroebnerError::WeightLength { .. } => "WeightLength",
            GroebnerError::NegativeWeight => "NegativeWeight",
            GroebnerError::DegreeMismatch { .. } => "DegreeMismatch",
        }
    }
}
