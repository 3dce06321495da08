//! Exact multivariate polynomials over `Q` or `F_p` with degree bookkeeping
//! for an abelian grading group.

mod field;
pub mod linalg;
mod monomial;
mod parse;
mod polynomial;

pub use field::{BaseField, Coeff};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{monomial_degree, Homogeneity, PolyDisplay, Polynomial};
