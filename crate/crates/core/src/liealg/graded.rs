use std::fmt;
use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::fourvector::FourVector;
use super::index4::{permutation_sign, Index4};
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational, SparseMatrix};

/// Dimension of g = sl₈ ⊕ ∧⁴.
pub const DIM: usize = 133;

/// Element `part0 + part1` of g with `part0 ∈ sl₈`, `part1 ∈ ∧⁴`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedElement {
    pub part0: Operator,
    pub part1: FourVector,
}

/// `[A, B] = AB − BA`.
pub fn bracket00(a: &Operator, b: &Operator) -> Operator {
    a.bracket(b)
}

/// Derivation action of `A` on ∧⁴: `A·(e_a∧e_b∧e_c∧e_d) = (Ae_a)∧e_b∧e_c∧e_d + …`.
pub fn bracket01(a: &Operator, t: &FourVector) -> FourVector {
    let m = a.matrix();
    let mut out = FourVector::zero();
    for (idx, c) in t.terms() {
        let s = idx.indices();
        for pos in 0..4 {
            let src = s[pos] as usize - 1;
            for k in 0..8 {
                let coeff = &m[(k, src)];
                if coeff.is_zero() {
                    continue;
                }
                let mut new = s;
                new[pos] = k as u8 + 1;
                if let Some((sign, sorted)) = Index4::sorted(new) {
                    let v = coeff * c;
                    out.add_term(sorted, &if sign > 0 { v } else { -v });
                }
            }
        }
    }
    out
}

/// Nonzero entries `(row, col, value)` (0-based) of `[e_S, e_U]` for every pair.
fn wedge_table() -> &'static Vec<Vec<(u8, u8, Rational)>> {
    static T: OnceLock<Vec<Vec<(u8, u8, Rational)>>> = OnceLock::new();
    T.get_or_init(|| {
        let all = Index4::all();
        let mut table = Vec::with_capacity(70 * 70);
        for s in all {
            for u in all {
                table.push(wedge_pair(*s, *u));
            }
        }
        table
    })
}

/// One half of the contracted formula: the term pairing all of `s` with three
/// indices of `u`, evaluated at row `k`, column `m`.
fn half_term(s: Index4, u: Index4, k: u8) -> Option<(u8, i8)> {
    if !u.contains(k) {
        return None;
    }
    let rest: Vec<u8> = u.indices().into_iter().filter(|&i| i != k).collect();
    if rest.iter().any(|&i| s.contains(i)) {
        return None;
    }
    let used = s.mask() | rest.iter().fold(0u8, |m, &i| m | (1 << (i - 1)));
    let m = (1..=8u8).find(|&i| used & (1 << (i - 1)) == 0)?;
    let s_idx = s.indices();
    let delta = permutation_sign(&[
        s_idx[0], s_idx[1], s_idx[2], s_idx[3], rest[0], rest[1], rest[2], m,
    ]);
    let sigma = permutation_sign(&[rest[0], rest[1], rest[2], k]);
    Some((m, delta * sigma))
}

fn wedge_pair(s: Index4, u: Index4) -> Vec<(u8, u8, Rational)> {
    // The 1/288 prefactor absorbs the 4!·3! orderings of each summand, leaving −½.
    let mut entries = Vec::new();
    for k in 1..=8u8 {
        let mut acc = [0i8; 9];
        if let Some((m, sign)) = half_term(s, u, k) {
            acc[m as usize] += sign;
        }
        if let Some((m, sign)) = half_term(u, s, k) {
            acc[m as usize] -= sign;
        }
        for m in 1..=8u8 {
            if acc[m as usize] != 0 {
                entries.push((k - 1, m - 1, Rational::new(-(acc[m as usize] as i64), 2)));
            }
        }
    }
    entries
}

/// `[T₁, T₂] ∈ sl₈` for four-vectors, with volume form `δ(e₁,…,e₈) = 1`.
pub fn bracket11(t1: &FourVector, t2: &FourVector) -> Operator {
    let table = wedge_table();
    let mut m = Matrix::zeros(8, 8);
    for (s, a) in t1.terms() {
        let row = s.position() * 70;
        for (u, b) in t2.terms() {
            let entries = &table[row + u.position()];
            if entries.is_empty() {
                continue;
            }
            let ab = a * b;
            for (k, mm, v) in entries {
                m[(*k as usize, *mm as usize)] += &ab * v;
            }
        }
    }
    Operator::new(m).expect("bracket of four-vectors is traceless")
}

/// Bracket on all of g, respecting the ℤ₂-grading.
pub fn bracket(x: &GradedElement, y: &GradedElement) -> GradedElement {
    let part0 = bracket00(&x.part0, &y.part0).add(&bracket11(&x.part1, &y.part1));
    let part1 = bracket01(&x.part0, &y.part1).sub(&bracket01(&y.part0, &x.part1));
    GradedElement { part0, part1 }
}

impl GradedElement {
    pub fn zero() -> Self {
        GradedElement {
            part0: Operator::zero(),
            part1: FourVector::zero(),
        }
    }

    pub fn from_operator(a: Operator) -> Self {
        GradedElement {
            part0: a,
            part1: FourVector::zero(),
        }
    }

    pub fn from_fourvector(t: FourVector) -> Self {
        GradedElement {
            part0: Operator::zero(),
            part1: t,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.part0.is_zero() && self.part1.is_zero()
    }

    pub fn is_odd(&self) -> bool {
        self.part0.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        GradedElement {
            part0: self.part0.add(&other.part0),
            part1: self.part1.add(&other.part1),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        GradedElement {
            part0: self.part0.sub(&other.part0),
            part1: self.part1.sub(&other.part1),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GradedElement {
            part0: self.part0.scale(k),
            part1: self.part1.scale(k),
        }
    }

    pub fn bracket(&self, other: &Self) -> Self {
        bracket(self, other)
    }

    /// Coordinates in the basis: 63 sl₈ generators, then 70 wedges.
    pub fn to_coords(&self) -> Vec<Rational> {
        let mut v = self.part0.to_coords();
        v.extend(self.part1.to_coords());
        v
    }

    pub fn from_coords(v: &[Rational]) -> Result<Self> {
        if v.len() != DIM {
            return Err(Error::Usage(format!(
                "expected {DIM} coordinates, got {}",
                v.len()
            )));
        }
        Ok(GradedElement {
            part0: Operator::from_coords(&v[..Operator::DIM])?,
            part1: FourVector::from_coords(&v[Operator::DIM..])?,
        })
    }

    pub fn basis_element(n: usize) -> Self {
        assert!(n < DIM);
        if n < Operator::DIM {
            Self::from_operator(Operator::basis_element(n))
        } else {
            Self::from_fourvector(FourVector::basis(Index4::from_position(n - Operator::DIM)))
        }
    }

    /// Random element with small integer coefficients; each coordinate is
    /// nonzero with probability `density`.
    pub fn random<R: Rng>(rng: &mut R, density: f64) -> Self {
        let v: Vec<Rational> = (0..DIM)
            .map(|_| {
                if rng.gen_bool(density) {
                    Rational::from(rng.gen_range(-5i64..=5))
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Self::from_coords(&v).expect("133 coordinates")
    }
}

impl From<Operator> for GradedElement {
    fn from(a: Operator) -> Self {
        Self::from_operator(a)
    }
}

impl From<FourVector> for GradedElement {
    fn from(t: FourVector) -> Self {
        Self::from_fourvector(t)
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}) + ({})", self.part0, self.part1)
    }
}

fn basis() -> &'static Vec<GradedElement> {
    static B: OnceLock<Vec<GradedElement>> = OnceLock::new();
    B.get_or_init(|| (0..DIM).map(GradedElement::basis_element).collect())
}

/// Sparse matrix of `y ↦ [x, y]` on the ordered basis.
pub fn ad_sparse(x: &GradedElement) -> SparseMatrix {
    let mut entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); DIM];
    for (j, b) in basis().iter().enumerate() {
        let col = bracket(x, b).to_coords();
        for (i, v) in col.into_iter().enumerate() {
            if !v.is_zero() {
                entries[i].push((j, v));
            }
        }
    }
    SparseMatrix {
        rows: DIM,
        cols: DIM,
        entries,
    }
}

/// Dense 133×133 matrix of `ad x`.
pub fn ad_matrix(x: &GradedElement) -> Matrix {
    ad_sparse(x).to_dense()
}

/// `tr(ad a · ad b)` for sparse matrices.
fn trace_product(a: &SparseMatrix, b: &SparseMatrix) -> Rational {
    let mut total = Rational::zero();
    for (i, row) in a.entries.iter().enumerate() {
        for (j, v) in row {
            if let Some((_, w)) = b.entries[*j].iter().find(|(c, _)| *c == i) {
                total += v * w;
            }
        }
    }
    total
}

/// Killing form `tr(ad x · ad y)`.
pub fn killing_form(x: &GradedElement, y: &GradedElement) -> Rational {
    trace_product(&ad_sparse(x), &ad_sparse(y))
}

/// Gram matrix of the Killing form on the ordered basis.
pub fn killing_gram() -> Matrix {
    let ads: Vec<SparseMatrix> = basis().iter().map(ad_sparse).collect();
    let mut g = Matrix::zeros(DIM, DIM);
    for i in 0..DIM {
        for j in i..DIM {
            let v = trace_product(&ads[i], &ads[j]);
            g[(j, i)] = v.clone();
            g[(i, j)] = v;
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fv(s: &str) -> FourVector {
        FourVector::parse_expr(s).unwrap()
    }

    fn half_diag() -> Operator {
        let d: Vec<Rational> = (0..8)
            .map(|i| if i < 4 { q(1, 2) } else { q(-1, 2) })
            .collect();
        Operator::diagonal(&d).unwrap()
    }

    /// Literal tensor contraction over all ordered index tuples.
    fn bracket11_bruteforce(t1: &FourVector, t2: &FourVector) -> Operator {
        let comp = |t: &FourVector, idx: [u8; 4]| -> Rational {
            match Index4::sorted(idx) {
                Some((sign, s)) => {
                    let c = t.get(s);
                    if sign > 0 {
                        c
                    } else {
                        -c
                    }
                }
                None => Rational::zero(),
            }
        };
        let mut m = Matrix::zeros(8, 8);
        let tuples4: Vec<[u8; 4]> = (1..=8u8)
            .flat_map(|a| {
                (1..=8u8).flat_map(move |b| {
                    (1..=8u8).flat_map(move |c| (1..=8u8).map(move |d| [a, b, c, d]))
                })
            })
            .filter(|t| permutation_sign(t) != 0)
            .collect();
        let tuples3: Vec<[u8; 3]> = (1..=8u8)
            .flat_map(|a| (1..=8u8).flat_map(move |b| (1..=8u8).map(move |c| [a, b, c])))
            .filter(|t| permutation_sign(t) != 0)
            .collect();
        for k in 1..=8u8 {
            for mm in 1..=8u8 {
                let mut acc = Rational::zero();
                for p in &tuples4 {
                    let a1 = comp(t1, *p);
                    let a2 = comp(t2, *p);
                    if a1.is_zero() && a2.is_zero() {
                        continue;
                    }
                    for r in &tuples3 {
                        let delta =
                            permutation_sign(&[p[0], p[1], p[2], p[3], r[0], r[1], r[2], mm]);
                        if delta == 0 {
                            continue;
                        }
                        let b2 = comp(t2, [r[0], r[1], r[2], k]);
                        let b1 = comp(t1, [r[0], r[1], r[2], k]);
                        let term = &a1 * &b2 - &a2 * &b1;
                        acc += term * Rational::from(delta as i64);
                    }
                }
                m[((k - 1) as usize, (mm - 1) as usize)] = acc * q(-1, 288);
            }
        }
        Operator::new(m).unwrap()
    }

    #[test]
    fn bracket01_eigenvalues() {
        let h = half_diag();
        assert_eq!(bracket01(&h, &fv("e1234")), fv("2e1234"));
        assert_eq!(bracket01(&h, &fv("e5678")), fv("-2e5678"));
        assert_eq!(bracket01(&h, &fv("e1256")), FourVector::zero());
        assert!(bracket01(&Operator::zero(), &fv("e1234 + e1357")).is_zero());
    }

    #[test]
    fn bracket01_moves_indices() {
        // E₅₁ sends e₁ to e₅.
        assert_eq!(bracket01(&Operator::unit(5, 1), &fv("e1234")), fv("-e2345"));
        assert!(bracket01(&Operator::unit(2, 1), &fv("e1234")).is_zero());
    }

    #[test]
    fn bracket11_examples() {
        assert_eq!(bracket11(&fv("e1234"), &fv("e5678")), half_diag());
        let p1 = fv("e1234 + e5678");
        let p2 = fv("e1357 + e2468");
        assert!(bracket11(&p1, &p2).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let t = GradedElement::random(&mut rng, 0.5).part1;
            assert!(bracket11(&t, &t).is_zero());
        }
    }

    #[test]
    fn bracket11_matches_literal_contraction() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pairs = [
            (fv("e1234"), fv("e5678")),
            (fv("e1235"), fv("e4678")),
            (fv("e1234"), fv("e1567")),
            (fv("e1357 + 2e2468"), fv("e2358 - e1467 + e1234")),
        ];
        for (a, b) in pairs {
            assert_eq!(bracket11(&a, &b), bracket11_bruteforce(&a, &b), "{a} , {b}");
        }
        for _ in 0..2 {
            let a = GradedElement::random(&mut rng, 0.15).part1;
            let b = GradedElement::random(&mut rng, 0.15).part1;
            assert_eq!(bracket11(&a, &b), bracket11_bruteforce(&a, &b));
        }
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let x = GradedElement::random(&mut rng, 0.3);
            let y = GradedElement::random(&mut rng, 0.3);
            let z = GradedElement::random(&mut rng, 0.3);
            assert_eq!(bracket(&x, &y), bracket(&y, &x).scale(&Rational::from(-1)));
            let j = bracket(&x, &bracket(&y, &z))
                .add(&bracket(&y, &bracket(&z, &x)))
                .add(&bracket(&z, &bracket(&x, &y)));
            assert!(j.is_zero());
        }
    }

    #[test]
    fn grading_and_reductions() {
        let a = GradedElement::from(Operator::unit(1, 2));
        let b = GradedElement::from(Operator::unit(2, 1));
        assert_eq!(
            bracket(&a, &b),
            GradedElement::from(bracket00(&Operator::unit(1, 2), &Operator::unit(2, 1)))
        );
        let t = GradedElement::from(fv("e1234"));
        assert!(bracket(&t, &t).is_zero());
        assert!(bracket(&a, &t).part0.is_zero());
    }

    #[test]
    fn coordinates_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = GradedElement::random(&mut rng, 0.5);
        assert_eq!(GradedElement::from_coords(&x.to_coords()).unwrap(), x);
    }

    #[test]
    fn adjoint_matrices() {
        assert!(ad_matrix(&GradedElement::zero()).is_zero());
        let e = GradedElement::from(fv("e1234"));
        let ad = ad_matrix(&e);
        let v = e.to_coords();
        let w = ad.mul_vec(&ad.mul_vec(&v).unwrap()).unwrap();
        assert!(w.iter().all(Rational::is_zero));
        // Diagonal h acts diagonally on the wedge block.
        let h = ad_matrix(&GradedElement::from(half_diag()));
        for i in 63..DIM {
            for j in 63..DIM {
                assert!(i == j || h[(i, j)].is_zero());
            }
        }
        // ad of a commutator is the commutator of ads.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let x = GradedElement::random(&mut rng, 0.2);
        let y = GradedElement::random(&mut rng, 0.2);
        let (ax, ay) = (ad_matrix(&x), ad_matrix(&y));
        let comm = ax.mul(&ay).unwrap().sub(&ay.mul(&ax).unwrap()).unwrap();
        assert_eq!(ad_matrix(&bracket(&x, &y)), comm);
    }

    #[test]
    fn killing_form_basics() {
        let z = GradedElement::zero();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let x = GradedElement::random(&mut rng, 0.3);
        let y = GradedElement::random(&mut rng, 0.3);
        assert!(killing_form(&z, &x).is_zero());
        assert_eq!(killing_form(&x, &y), killing_form(&y, &x));
        let g = killing_gram();
        assert_eq!(g.rank(), DIM);
    }
}
