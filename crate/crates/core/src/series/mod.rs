//! Truncated generalized power series in fractional exponents.

mod galois;
mod gseries;
mod json;
mod weight;

pub(crate) use gseries::{format_monomial, push_term};
pub use gseries::{GSeries, MonomialUnitForm, Term};
pub use json::{CycJson, QuadJson, SeriesJson, TermJson};
pub use weight::{ExpVec, Weight, WeightLog};
