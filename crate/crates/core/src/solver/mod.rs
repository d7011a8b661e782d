//! Roots of polynomials with series coefficients.

mod charpoly;
mod expand;
mod newton;
mod ypoly;

pub use charpoly::charpoly_roots;
pub use expand::{expand_roots, Caps, RootExpansion};
pub use newton::{initial_candidates, support_points, NewtonCandidate};
pub use ypoly::YPoly;
