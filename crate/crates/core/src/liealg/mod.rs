//! The ℤ₂-graded algebra g = sl₈ ⊕ ∧⁴ℚ⁸ of type E₇.

mod decompose;
mod fourvector;
mod graded;
mod group;
mod index4;
mod operator;

pub use decompose::{is_nilpotent, jordan_decompose};
pub use fourvector::FourVector;
pub use graded::{
    ad_matrix, ad_sparse, bracket, bracket00, bracket01, bracket11, killing_form, killing_gram,
    GradedElement, DIM,
};
pub use group::{conjugate_operator, random_unimodular, wedge4_action};
pub use index4::{permutation_sign, Index4};
pub use operator::Operator;

/// Hodge star on ∧⁴; see [`FourVector::hodge_dual`].
pub fn hodge_dual(t: &FourVector) -> FourVector {
    t.hodge_dual()
}
