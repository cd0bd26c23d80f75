//! Exact computation of position invariants for families of hypersurfaces
//! on projective varieties over the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: homogeneous polynomials with rational coefficients, parsing
//!   and JSON encoding.
//! * [`groebner`]: Buchberger's algorithm, normal forms, Hilbert functions,
//!   projective dimension and degree.
//! * [`position`]: varieties, hypersurface families, intersection
//!   dimensions, the distributive constant and position classes.
//! * [`replace`]: exponent schedules and the replacement of an ordered
//!   family by `n + 1` combinations in general position.
//! * [`weights`]: Hilbert weights, the Evertse–Ferretti chained inequality
//!   and explicit truncation/defect bounds.
//! * [`heights`]: places of `Q`, heights, Weil functions and empirical
//!   margins for the subspace-type inequality.
//!
//! Everything that produces an invariant is computed in exact arithmetic.
//! Floating point appears only when rendering logarithms for display.

pub mod error;
pub mod exec;
pub mod groebner;
pub mod heights;
pub mod numeric;
pub mod poly;
pub mod position;
pub mod rational;
pub mod replace;
pub mod weights;

pub use error::{Error, Result};
pub use exec::Exec;
pub use groebner::{GroebnerBasis, IdealProfile, MonomialOrder, ProjDim};
pub use poly::{HomoPoly, Monomial};
pub use position::{DistributiveReport, HypersurfaceFamily, PositionClass, Variety};
pub use rational::Rational;
pub use heights::{LogRational, MarginReport, Place, RationalPoint};
pub use replace::{ExponentSchedule, ReplacementSystem};
pub use weights::{BoundReport, HilbertWeightReport, WeightVector};
