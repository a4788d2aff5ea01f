//! Exact coefficient fields, univariate and bivariate polynomials, and
//! sparse exact linear algebra.

mod bipoly;
mod field;
mod matrix;
mod unipoly;

pub use bipoly::{resultant_y, BiPoly};
pub use field::{is_prime, next_prime, Field, FieldElement, MAX_MODULUS};
pub use matrix::{kernel_basis, normalize_sparse, rank_and_pivots, ExactMatrix, RankProfile, RowSpace, SparseVec};
pub use unipoly::{gcd_uni, UniPoly};

#[allow(unused_imports)]
pub(crate) use field::{add_mod, inv_mod, mul_mod, pow_mod, sub_mod};
#[allow(unused_imports)]
pub(crate) use unipoly::fmt_terms;
