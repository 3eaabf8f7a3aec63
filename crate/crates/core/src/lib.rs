//! Exact-arithmetic machinery for certifying the bound `|H_{3,1}(f^{-1})| ≤ 1/16`
//! over Ozaki close-to-convex functions `f`, where `H_{3,1}` is the third
//! Hankel determinant of the inverse-function coefficients.
//!
//! Layers, bottom-up:
//! - [`arith`]: rationals, Gaussian rationals, rational intervals;
//! - [`series`]: truncated power series, reversion and Hankel determinants;
//! - [`poly`]: univariate and multivariate polynomials;
//! - [`maps`]: Carathéodory data → function coefficients → the determinant,
//!   the bounding polynomial `ϑ(c,x,y)` and samplers;
//! - [`cert`]: Sturm sign certificates and Bernstein box certificates;
//! - [`proof`]: the lemma/case plan that assembles the theorem certificate.

pub mod arith;
pub mod cert;
pub mod error;
pub mod maps;
pub mod poly;
pub mod proof;
pub mod series;

pub use error::{Error, Result};
