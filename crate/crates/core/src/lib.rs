//! Exact computation of Puiseux-type roots of polynomials over generalized
//! power series in several variables, their branch decomposition and
//! value semigroups.

pub mod echelon;
pub mod error;
pub mod parse;
pub mod scalar;
pub mod semigroup;
pub mod series;
pub mod solver;
pub mod unipoly;

pub use error::{Error, Result};
pub use scalar::{Cyc, QuadReal, Rat, Scalar};
pub use series::{ExpVec, GSeries, Weight};

/// Series with cyclotomic coefficients.
pub type Series = GSeries<Cyc>;
/// Series with rational coefficients.
pub type RatSeries = GSeries<Rat>;
