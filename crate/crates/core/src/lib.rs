//! Minimal generating sets for ideals of toric surfaces and for canonical
//! ideals of curves given by non-degenerate Laurent polynomials, with
//! brute-force oracles to check every count and vanishing property.

pub mod algebra;
pub mod canonical;
pub mod error;
pub mod format;
pub mod laurent;
pub mod lattice;
pub mod toric;
pub mod verify;

pub use error::{Error, Result};
