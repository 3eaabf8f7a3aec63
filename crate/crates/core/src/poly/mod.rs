//! Exact polynomials: dense univariate, sparse multivariate and complex-valued.

mod gauss;
mod multi;
mod parse;
mod uni;

pub use gauss::GaussPoly;
pub use multi::MultiPoly;
pub use uni::UniPoly;

/// Named variable constructor shorthand used throughout the proof modules.
pub fn var(name: &str) -> MultiPoly {
    MultiPoly::var(name)
}
