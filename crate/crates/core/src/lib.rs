//! Exact-arithmetic engine for pseudo-Kähler Lie algebras with abelian
//! complex structures, built around pairs (U, H) of complex commutative
//! associative algebras with non-degenerate hermitian forms.
//!
//! Everything is computed over the Gaussian rationals, so every identity in
//! the library is checked by exact equality; there are no tolerances.

pub mod error;
pub mod scalar;
pub mod matrix;
pub mod exactlin;
pub mod assoc;
pub mod apk;
pub mod liereal;
pub mod curvature;
pub mod extension;
pub mod realform;
pub mod format;
pub mod catalog;
pub mod generate;

pub use error::{Error, Result, ValidationReport, Violation};
pub use scalar::{CRat, Rat};

// re-exported so downstream crates share the same numeric traits
pub use num_traits;
