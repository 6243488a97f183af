//! Exact computations in the graded Lie algebra sl₈ ⊕ ∧⁴ℂ⁸ of type E₇.

pub mod atlas;
pub mod carter;
pub mod error;
pub mod exactmath;
pub mod families;
pub mod liealg;
pub mod nilpotent;
pub mod report;
pub mod roots;
pub mod suites;

pub use error::{Error, Result};
