//! Binary forms over the integers: discriminants, resultants, certified roots,
//! cross-ratio invariants, invariant orders and GL₂(ℤ)-equivalence testing.

pub mod bounds;
pub mod census;
pub mod cross_ratio;
pub mod equivalence;
pub mod error;
pub mod family;
pub mod fixed;
pub mod form;
pub mod irreducible;
pub mod linalg;
pub mod matrix;
pub mod order;
pub mod par;
pub mod poly;
pub mod resultant;
pub mod roots;
pub mod serde_big;
pub mod sunit;
pub mod unit_resultant;
pub mod weak;

pub use error::{Error, Result};
pub use form::{BinaryForm, RatForm};
pub use matrix::{IntMatrix2, RatMatrix2};
pub use par::Exec;
