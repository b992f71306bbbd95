//! Sparse multivariate polynomials over ℚ in `ε, x1..xr`.

mod fglm;
mod groebner;
mod monomial;
mod order;
mod polynomial;
pub(crate) mod reduce;

pub use fglm::fglm;
pub use groebner::{buchberger, sort_by_leading, standard_monomials, StandardMonomials};
pub use monomial::{Monomial, MonomialDisplay, VarNames};
pub use order::{MonomialOrder, WeightVector};
pub use polynomial::{Poly, PolyDisplay};
pub use reduce::{divide, normal_form, s_polynomial, Division};

/// Index of ε in every exponent vector.
pub const EPSILON: usize = 0;
