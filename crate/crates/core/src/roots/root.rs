use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{usage, Result};
use crate::exactmath::Rational;
use crate::liealg::{FourVector, GradedElement, Index4, Operator};

/// Root of g with respect to the diagonal subalgebra, stored as a ℤ⁸
/// representative modulo the all-ones vector.
///
/// `Pair(i, j)` is `εᵢ − εⱼ`; `Quad(S)` is `Σ_{s∈S} ε_s`. The same shapes label
/// the roots `γᵢ − γⱼ` and `γᵢ + γⱼ + γₖ + γₗ` relative to the Cartan subspace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Root {
    Pair(u8, u8),
    Quad(Index4),
}

impl Root {
    pub fn pair(i: u8, j: u8) -> Result<Root> {
        if i == j || !(1..=8).contains(&i) || !(1..=8).contains(&j) {
            return usage(format!("invalid pair root ({i}, {j})"));
        }
        Ok(Root::Pair(i, j))
    }

    pub fn vector(self) -> [i64; 8] {
        let mut v = [0i64; 8];
        match self {
            Root::Pair(i, j) => {
                v[i as usize - 1] = 1;
                v[j as usize - 1] = -1;
            }
            Root::Quad(s) => {
                for i in s.indices() {
                    v[i as usize - 1] = 1;
                }
            }
        }
        v
    }

    pub fn negate(self) -> Root {
        match self {
            Root::Pair(i, j) => Root::Pair(j, i),
            Root::Quad(s) => Root::Quad(s.complement()),
        }
    }

    /// The root vector spanning the root space.
    pub fn root_vector(self) -> GradedElement {
        match self {
            Root::Pair(i, j) => Operator::unit(i as usize, j as usize).into(),
            Root::Quad(s) => FourVector::basis(s).into(),
        }
    }

    /// Values on the basis `d₁ … d₇`; these are the coordinates used for
    /// simple-system extraction.
    pub fn d_coordinates(self) -> Vec<Rational> {
        (1..=7)
            .map(|i| root_value(self, &Operator::cartan_generator(i)).expect("diagonal"))
            .collect()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Root::Pair(i, j) => write!(f, "e{i}-e{j}"),
            Root::Quad(s) => {
                let [a, b, c, d] = s.indices();
                write!(f, "e{a}+e{b}+e{c}+e{d}")
            }
        }
    }
}

/// All 126 roots: 56 of the form `εᵢ − εⱼ` followed by 70 of the form `εᵢ+εⱼ+εₖ+εₗ`.
pub fn roots_of_g() -> Vec<Root> {
    let mut out = Vec::with_capacity(126);
    for i in 1..=8u8 {
        for j in 1..=8u8 {
            if i != j {
                out.push(Root::Pair(i, j));
            }
        }
    }
    out.extend(Index4::all().iter().map(|&s| Root::Quad(s)));
    out
}

/// `r(A)` for a diagonal traceless `A`.
pub fn root_value(r: Root, a: &Operator) -> Result<Rational> {
    if !a.is_diagonal() {
        return usage("roots are evaluated on diagonal operators only");
    }
    let d = a.diagonal_entries();
    Ok(r.vector()
        .iter()
        .zip(&d)
        .filter(|(c, _)| **c != 0)
        .map(|(c, x)| x * Rational::from(*c))
        .sum())
}

/// `(u, v) = u·v − (Σu)(Σv)/8`, which gives `d − 2` on quad roots sharing `d` indices.
pub fn root_inner(r1: Root, r2: Root) -> i64 {
    let (u, v) = (r1.vector(), r2.vector());
    let dot: i64 = u.iter().zip(&v).map(|(a, b)| a * b).sum();
    let su: i64 = u.iter().sum();
    let sv: i64 = v.iter().sum();
    let num = 8 * dot - su * sv;
    debug_assert_eq!(num % 8, 0);
    num / 8
}
