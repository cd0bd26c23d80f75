use thiserror::Error;

use crate::groebner::GroebnerError;
use crate::heights::HeightsError;
use crate::poly::PolyError;
use crate::position::PositionError;
use crate::replace::ReplaceError;
use crate::weights::WeightsError;

/// Union of the module errors, for callers that drive several modules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Position(#[from] PositionError),
    #[error(transparent)]
    Replace(#[from] ReplaceError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    Heights(#[from] HeightsError),
}

impl Error {
    /// The innermost error variant name, e.g. `"NotHomogeneous"`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Poly(e) => e.name(),
            Error::Groebner(e) => e.name(),
            Error::Position(e) => e.name(),
            Error::Replace(e) => e.name(),
            Error::Weights(e) => e.name(),
            Error::Heights(e) => e.name(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
