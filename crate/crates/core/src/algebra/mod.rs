//! Exact arithmetic: ℚ(i) scalars, multivariate polynomials, Laurent polynomials.

mod gaussian;
mod laurent;
mod monomial;
mod ordered;
mod parse;
mod poly;

pub use gaussian::GaussianRational;
pub use laurent::LaurentPoly;
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use ordered::OrderedPoly;
pub use parse::parse_poly;
pub use poly::{MultiPoly, VarSet};
