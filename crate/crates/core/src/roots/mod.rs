//! Root systems with respect to the diagonal subalgebra and the Cartan subspace.

mod cartan;
mod diagram;
mod root;
mod table1;

pub use cartan::{
    cartan_subspace, classify_subsystem, gamma_basis, is_transversal, p_of_permutation,
    roots_wrt_c, vanishing_subsystem, CRoot, CartanVector, CARTAN_PERMUTATIONS,
};
pub use diagram::{classify_with, simple_system, DiagramType, Family};
pub use root::{root_inner, root_value, roots_of_g, Root};
pub use table1::{generic_point, parse_basis, verify_table1, verify_table1_rows};

use crate::exactmath::{Matrix, Rational};

/// `8v − (Σv)·1`, a representative orthogonal to the all-ones vector.
fn centered(r: Root) -> Vec<Rational> {
    let v = r.vector();
    let s: i64 = v.iter().sum();
    v.iter().map(|x| Rational::from(8 * x - s)).collect()
}

/// Simple roots of g with respect to the diagonal subalgebra, for lexicographic positivity.
pub fn simple_roots() -> Vec<Root> {
    let roots = roots_of_g();
    let coords: Vec<Vec<Rational>> = roots.iter().map(|&r| centered(r)).collect();
    let simple = simple_system(&coords).expect("root system of g");
    simple
        .iter()
        .map(|c| {
            roots[coords
                .iter()
                .position(|x| x == c)
                .expect("simple root is a root")]
        })
        .collect()
}

/// Cartan matrix of a list of roots under [`root_inner`].
pub fn cartan_matrix(roots: &[Root]) -> Matrix {
    let rows = roots
        .iter()
        .map(|&a| {
            roots
                .iter()
                .map(|&b| Rational::from(root_inner(a, b)))
                .collect()
        })
        .collect();
    Matrix::from_rows(rows).expect("square")
}

/// Dynkin type of the full root system of g.
pub fn type_of_g() -> DiagramType {
    let coords: Vec<Vec<Rational>> = roots_of_g().into_iter().map(centered).collect();
    classify_with(&coords, diagram::dot).expect("root system of g")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn e7_simple_system() {
        let s = simple_roots();
        assert_eq!(s.len(), 7);
        let c = cartan_matrix(&s);
        for i in 0..7 {
            assert_eq!(c.row(i)[i], Rational::from(2));
        }
        let edges: usize = (0..7)
            .flat_map(|i| (i + 1..7).map(move |j| (i, j)))
            .filter(|&(i, j)| c.row(i)[j] == Rational::from(-1))
            .count();
        assert_eq!(edges, 6);
        assert_eq!(c.det().unwrap(), Rational::from(2));
        assert_eq!(type_of_g().to_string(), "E7");
    }
}
