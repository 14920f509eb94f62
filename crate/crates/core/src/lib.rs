//! Exact machinery for polynomial recurrence along idempotent ultrafilters,
//! specialized to what can be decided by finite computation.
//!
//! * [`intpoly`]: integer-valued polynomials on the binomial basis and the
//!   difference operator `Delta^s`.
//! * [`lattice`]: subgroups of `Z^n` in Hermite normal form. A finite-index
//!   lattice belongs to every idempotent of the matching dimension, so
//!   lattice-uniform statements are the checkable stand-in for "p-big".
//! * [`keyengine`]: witness lattices for the transfer lemma and the
//!   maximal-rank subgroup construction.
//! * [`ipstruct`]: finite IP-sets, block-ordered unions and windowed
//!   Hindman / IP* searches.
//! * [`dynamics`]: return measures and recurrence sets on finite
//!   measure-preserving systems.
//! * [`spectral`]: commuting finite-order unitaries given by rational
//!   phases, and their limit projections.

pub mod arith;
pub mod dynamics;
pub mod error;
pub mod intpoly;
pub mod ipstruct;
pub mod json;
pub mod keyengine;
pub mod lattice;
pub mod limits;
pub mod spectral;

pub use error::{Error, Result};
pub use intpoly::{BinPoly, MonoPoly, MultiIndex, PolyTuple};
pub use lattice::{Lattice, LatticeIndex};
pub use limits::Limits;
