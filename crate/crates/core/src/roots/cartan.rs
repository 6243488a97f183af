use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::diagram::{classify_with, dot, DiagramType};
use super::root::Root;
use crate::error::{usage, Result};
use crate::exactmath::Rational;
use crate::liealg::{FourVector, Index4};

/// Element of the Cartan subspace written in the basis `p₁ … p₇`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanVector(pub [Rational; 7]);

impl CartanVector {
    pub fn zero() -> Self {
        CartanVector(std::array::from_fn(|_| Rational::zero()))
    }

    pub fn from_i64(c: [i64; 7]) -> Self {
        CartanVector(c.map(Rational::from))
    }

    /// `p_k` for `k` in `1..=7`.
    pub fn unit(k: usize) -> Self {
        let mut v = CartanVector::zero();
        v.0[k - 1] = Rational::one();
        v
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CartanVector(std::array::from_fn(|i| &self.0[i] * k))
    }

    /// Scalar product with respect to which `p₁ … p₇` is orthonormal.
    pub fn inner(&self, other: &CartanVector) -> Rational {
        dot(&self.0, &other.0)
    }

    pub fn to_fourvector(&self) -> FourVector {
        let basis = cartan_subspace();
        let mut out = FourVector::zero();
        for (c, p) in self.0.iter().zip(basis) {
            if !c.is_zero() {
                out = out.add(&p.scale(c));
            }
        }
        out
    }
}

impl Add for &CartanVector {
    type Output = CartanVector;
    fn add(self, rhs: &CartanVector) -> CartanVector {
        CartanVector(std::array::from_fn(|i| &self.0[i] + &rhs.0[i]))
    }
}

impl Sub for &CartanVector {
    type Output = CartanVector;
    fn sub(self, rhs: &CartanVector) -> CartanVector {
        CartanVector(std::array::from_fn(|i| &self.0[i] - &rhs.0[i]))
    }
}

impl Neg for &CartanVector {
    type Output = CartanVector;
    fn neg(self) -> CartanVector {
        CartanVector(std::array::from_fn(|i| -&self.0[i]))
    }
}

impl fmt::Display for CartanVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The seven pairwise transversal permutations defining the Cartan subspace.
pub const CARTAN_PERMUTATIONS: [[u8; 8]; 7] = [
    [1, 2, 3, 4, 5, 6, 7, 8],
    [1, 3, 5, 7, 6, 8, 2, 4],
    [1, 5, 6, 2, 8, 4, 3, 7],
    [1, 6, 8, 3, 4, 7, 5, 2],
    [1, 8, 4, 5, 7, 2, 6, 3],
    [1, 4, 7, 6, 2, 3, 8, 5],
    [1, 7, 2, 8, 3, 5, 4, 6],
];

fn check_permutation(s: &[u8; 8]) -> Result<()> {
    let mut seen = 0u16;
    for &i in s {
        if !(1..=8).contains(&i) || seen & (1 << i) != 0 {
            return usage(format!("{s:?} is not a permutation of 1..8"));
        }
        seen |= 1 << i;
    }
    Ok(())
}

/// `e_{i₁}∧e_{j₁}∧e_{k₁}∧e_{l₁} + e_{i₂}∧e_{j₂}∧e_{k₂}∧e_{l₂}` for `s = (i₁j₁k₁l₁ i₂j₂k₂l₂)`.
pub fn p_of_permutation(s: &[u8; 8]) -> Result<FourVector> {
    check_permutation(s)?;
    let mut out = FourVector::zero();
    for half in [[s[0], s[1], s[2], s[3]], [s[4], s[5], s[6], s[7]]] {
        let (sign, idx) = Index4::sorted(half).expect("distinct indices");
        out.add_term(idx, &Rational::from(sign as i64));
    }
    Ok(out)
}

/// Leading quadruples share exactly two indices.
pub fn is_transversal(s1: &[u8; 8], s2: &[u8; 8]) -> Result<bool> {
    check_permutation(s1)?;
    check_permutation(s2)?;
    let common = s1[..4].iter().filter(|i| s2[..4].contains(i)).count();
    Ok(common == 2)
}

/// `p₁ … p₇`.
pub fn cartan_subspace() -> &'static [FourVector; 7] {
    static BASIS: OnceLock<[FourVector; 7]> = OnceLock::new();
    BASIS.get_or_init(|| {
        CARTAN_PERMUTATIONS.map(|s| p_of_permutation(&s).expect("valid permutation"))
    })
}

const GAMMA_SIGNS: [[i64; 7]; 8] = [
    [1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, -1, -1, 1],
    [1, 1, -1, 1, -1, -1, -1],
    [1, -1, -1, -1, 1, 1, -1],
    [-1, 1, 1, -1, 1, -1, -1],
    [-1, -1, 1, 1, -1, 1, -1],
    [-1, 1, -1, -1, -1, 1, 1],
    [-1, -1, -1, 1, 1, -1, 1],
];

/// `γ₁ … γ₈` with the free constant set to 1.
pub fn gamma_basis() -> [CartanVector; 8] {
    GAMMA_SIGNS.map(CartanVector::from_i64)
}

/// A root with respect to the Cartan subspace. The label reads `Pair(i, j)` as
/// `γᵢ − γⱼ` and `Quad(S)` as `Σ_{s∈S} γ_s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CRoot {
    pub label: Root,
    pub coords: CartanVector,
}

impl CRoot {
    /// Value of the root on `p`.
    pub fn value(&self, p: &CartanVector) -> Rational {
        self.coords.inner(p)
    }
}

fn c_root(label: Root) -> CRoot {
    let g = gamma_basis();
    let coords = match label {
        Root::Pair(i, j) => &g[i as usize - 1] - &g[j as usize - 1],
        Root::Quad(s) => s
            .indices()
            .iter()
            .fold(CartanVector::zero(), |acc, &i| &acc + &g[i as usize - 1]),
    };
    CRoot { label, coords }
}

/// All 126 roots with respect to the Cartan subspace, in the order of [`super::roots_of_g`].
pub fn roots_wrt_c() -> &'static [CRoot] {
    static ROOTS: OnceLock<Vec<CRoot>> = OnceLock::new();
    ROOTS.get_or_init(|| super::roots_of_g().into_iter().map(c_root).collect())
}

/// Roots vanishing on `p`.
pub fn vanishing_subsystem(p: &CartanVector) -> Vec<CRoot> {
    roots_wrt_c()
        .iter()
        .filter(|r| r.value(p).is_zero())
        .cloned()
        .collect()
}

/// Dynkin type of a root subsystem given with respect to the Cartan subspace.
pub fn classify_subsystem(roots: &[CRoot]) -> Result<DiagramType> {
    let coords: Vec<Vec<Rational>> = roots.iter().map(|r| r.coords.0.to_vec()).collect();
    classify_with(&coords, dot)
}
