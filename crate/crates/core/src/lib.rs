//! Explicit flat degenerations of the curvilinear algebra ℚ[t]/(tⁿ) to spider
//! algebras `ℚ[x1..xr]/(x_i^{ℓi+1}, x_i x_j)`, built and verified in exact
//! rational arithmetic.
//!
//! The pipeline for a spider type `(ℓ1, …, ℓr)`:
//!
//! 1. embed `x_i ↦ v_i` using divided differences of `u_a = t/(1 − a t)`
//!    ([`series`]);
//! 2. check that `{1} ∪ {x_i^k}` is a basis of ℚ[t]/(tⁿ) and expand the
//!    products `v_i v_j` and the powers `v_i^{ℓi+1}` in it ([`spider`]);
//! 3. pick consecutive weights making each border strictly heaviest and
//!    homogenize with a parameter ε;
//! 4. verify the special fiber, generic fibers and the S-polynomial
//!    certificate ([`verify`]).

pub mod cli;
pub mod descriptor;
pub mod emit;
pub mod error;
pub mod exactlinear;
pub mod par;
pub mod poly;
pub mod series;
pub mod spider;
pub mod verify;

pub use error::{Error, Result};
pub use exactlinear::Rational;
