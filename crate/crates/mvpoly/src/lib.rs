//! Rank-2 affine MV polytopes.
//!
//! The crate builds MV polytopes for affine sl2 from Lusztig data, puts the
//! crystal structure of B(-infinity) on them and carries the same structure
//! over to A2(2) through a similarity map.  Everything is exact rational
//! arithmetic.

pub mod builder;
pub mod crystal;
pub mod error;
pub mod lusztig;
pub mod polytope;
pub mod root_lattice;
pub mod twisted;
pub mod verify;

pub use error::{MvError, Result};
pub use lusztig::{LusztigDatum, Partition, RatDatum};
pub use root_lattice::{AffineWeight, RootVector, Side, System, Q};
