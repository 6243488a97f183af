//! Exact rational arithmetic, dense linear algebra and polynomials over ℚ.

mod jordan;
mod matrix;
mod poly;
mod rational;

pub use jordan::{jordan_chevalley, minimal_polynomial, semisimple_polynomial};
pub use matrix::{EchelonBasis, LinearSolution, Matrix, SparseMatrix};
pub use poly::Poly;
pub use rational::{q, Rational};

/// Solves `A x = b`; see [`Matrix::solve`].
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> crate::Result<Option<LinearSolution>> {
    a.solve(b)
}

/// Basis of `ker A`; see [`Matrix::kernel_basis`].
pub fn kernel_basis(a: &Matrix) -> Vec<Vec<Rational>> {
    a.kernel_basis()
}

pub fn rank(a: &Matrix) -> usize {
    a.rank()
}
