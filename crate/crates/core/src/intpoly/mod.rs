//! Integer-valued multivariate polynomials.
//!
//! The canonical representation is the binomial basis: a polynomial in
//! `z_1, ..., z_n` is a finite integer combination of the products
//! `C(z_1, i_1) ... C(z_n, i_n)`. Every such combination is integer valued
//! on integer arguments, and every integer-valued polynomial has a unique
//! expansion of this form, so the type cannot hold anything else.
//!
//! Monomial coordinates ([`MonoPoly`], exact rationals) appear only where
//! the homogeneous decomposition needs them.

mod binpoly;
mod monomial;
mod tuple;

pub use binpoly::{c_number, BinPoly, MultiIndex};
pub use monomial::MonoPoly;
pub use tuple::PolyTuple;

#[cfg(test)]
mod tests;
