//! Graded subalgebras attached to mixed families and their nilpotent tables.

use std::collections::BTreeMap;
use std::fmt;

use crate::atlas::Atlas;
use crate::error::{usage, Error, Result};
use crate::exactmath::{EchelonBasis, Matrix, Rational};
use crate::liealg::{bracket00, bracket01, bracket11, FourVector, Index4, Operator};
use crate::nilpotent::{eigenspace, random_sl2_for_h};
use crate::report::{Report, Status};
use crate::roots::{parse_basis, root_value, Root};

/// Family numbers with an explicit construction.
pub const FAMILIES: [u32; 7] = [2, 3, 9, 11, 12, 18, 19];

/// Retries per row in [`verify_family_table`].
pub const RETRIES: usize = 20;

/// A graded subalgebra `g₀ ⊕ g₁` of g with a Cartan subalgebra of `g₀` and simple roots.
#[derive(Clone, Debug)]
pub struct SubalgebraSpec {
    pub family: u32,
    pub basis0: Vec<Operator>,
    pub basis1: Vec<FourVector>,
    pub cartan: Vec<Operator>,
    pub simple_roots: Vec<Root>,
    pub type_label: String,
}

impl SubalgebraSpec {
    pub fn dim(&self) -> usize {
        self.basis0.len() + self.basis1.len()
    }
}

impl fmt::Display for SubalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let roots: Vec<String> = self.simple_roots.iter().map(ToString::to_string).collect();
        write!(
            f,
            "family {}: type {}, dim {} + {}, simple roots {}",
            self.family,
            self.type_label,
            self.basis0.len(),
            self.basis1.len(),
            roots.join(", ")
        )
    }
}

fn coeff(t: &FourVector, idx: [u8; 4]) -> Rational {
    match Index4::sorted(idx) {
        Some((sign, s)) => t.get(s) * Rational::from(sign as i64),
        None => Rational::zero(),
    }
}

fn wedge(idx: [u8; 4]) -> FourVector {
    match Index4::sorted(idx) {
        Some((sign, s)) => FourVector::basis(s).scale(&Rational::from(sign as i64)),
        None => FourVector::zero(),
    }
}

fn pairs() -> impl Iterator<Item = (u8, u8)> {
    (1..=8u8).flat_map(|i| (i + 1..=8).map(move |j| (i, j)))
}

/// `Xᵀ B + B X` for `B = e¹∧e² + e³∧e⁴ + e⁵∧e⁶ + e⁷∧e⁸`.
fn symplectic_defect(x: &Operator) -> Vec<Rational> {
    let b = symplectic_form();
    let m = x.matrix();
    let lhs = m.transpose().mul(&b).expect("8x8");
    let rhs = b.mul(m).expect("8x8");
    lhs.add(&rhs).expect("8x8").to_rows().concat()
}

fn symplectic_form() -> Matrix {
    let mut b = Matrix::zeros(8, 8);
    for k in 0..4 {
        b[(2 * k, 2 * k + 1)] = Rational::one();
        b[(2 * k + 1, 2 * k)] = -Rational::one();
    }
    b
}

/// `T^{srij} B_{sr}` up to a factor 2, one entry per pair `i < j`.
fn b_contraction(t: &FourVector) -> Vec<Rational> {
    pairs()
        .map(|(i, j)| (1..=4u8).map(|k| coeff(t, [2 * k - 1, 2 * k, i, j])).sum())
        .collect()
}

/// Entries of `x` outside the diagonal blocks given by `blocks`, plus the trace of every block but the last.
fn block_defect(x: &Operator, blocks: &[&[u8]]) -> Vec<Rational> {
    let block_of = |i: u8| {
        blocks
            .iter()
            .position(|b| b.contains(&i))
            .expect("covering blocks")
    };
    let mut out: Vec<Rational> = (1..=8u8)
        .flat_map(|i| (1..=8u8).map(move |j| (i, j)))
        .filter(|&(i, j)| block_of(i) != block_of(j))
        .map(|(i, j)| x.entry(i as usize, j as usize).clone())
        .collect();
    for b in &blocks[..blocks.len() - 1] {
        out.push(
            b.iter()
                .map(|&i| x.entry(i as usize, i as usize).clone())
                .sum(),
        );
    }
    out
}

const W1: [u8; 4] = [1, 2, 3, 4];
const W2: [u8; 4] = [5, 6, 7, 8];
const ODD: [u8; 4] = [1, 3, 5, 7];
const EVEN: [u8; 4] = [2, 4, 6, 8];
/// Images of `f₁..f₄` under the second embedding of the symmetric-square construction.
const PHI2: [u8; 4] = [8, 7, 6, 5];

fn two_subsets(w: [u8; 4]) -> Vec<[u8; 2]> {
    (0..4)
        .flat_map(|a| (a + 1..4).map(move |b| [w[a], w[b]]))
        .collect()
}

/// Monomials of `∧²W₁ ⊗ ∧²W₂`.
fn split_monomials(w1: [u8; 4], w2: [u8; 4]) -> Vec<FourVector> {
    let b2 = two_subsets(w2);
    two_subsets(w1)
        .into_iter()
        .flat_map(|a| b2.iter().map(move |b| wedge([a[0], a[1], b[0], b[1]])))
        .collect()
}

/// `X` restricted to the `φ₂` copy equals `X` on `W₁`, entrywise.
fn diagonal_copy_defect(x: &Operator) -> Vec<Rational> {
    let mut out = block_defect(x, &[&W1, &W2]);
    for a in 0..4 {
        for b in 0..4 {
            let top = x.entry(W1[a] as usize, W1[b] as usize);
            let bottom = x.entry(PHI2[a] as usize, PHI2[b] as usize);
            out.push(top - bottom);
        }
    }
    out
}

/// Images of `u·v` for `u, v` in the basis of `∧²W`, `u ≤ v`.
fn symmetric_square() -> Vec<FourVector> {
    let w: [u8; 4] = [1, 2, 3, 4];
    let b = two_subsets(w);
    let mut out = Vec::new();
    for (k, u) in b.iter().enumerate() {
        for v in &b[k..] {
            let x = wedge([u[0], u[1], PHI2[v[0] as usize - 1], PHI2[v[1] as usize - 1]]);
            let y = wedge([v[0], v[1], PHI2[u[0] as usize - 1], PHI2[u[1] as usize - 1]]);
            out.push(x.add(&y));
        }
    }
    out
}

/// Pairing of the `φ₁(∧²W) ∧ φ₂(∧²W)` component with the determinant form of `W`.
fn det_contraction(t: &FourVector) -> Vec<Rational> {
    let total = two_subsets(W1)
        .into_iter()
        .map(|u| {
            let rest: Vec<u8> = W1.iter().copied().filter(|i| !u.contains(i)).collect();
            let sign = Index4::sorted([u[0], u[1], rest[0], rest[1]]).map_or(0, |(s, _)| s);
            let c = coeff(
                t,
                [
                    u[0],
                    u[1],
                    PHI2[rest[0] as usize - 1],
                    PHI2[rest[1] as usize - 1],
                ],
            );
            c * Rational::from(sign as i64)
        })
        .sum();
    vec![total]
}

fn kernel_in_span<T, F>(
    candidates: &[T],
    constraint: F,
    combine: impl Fn(&[Rational]) -> T,
) -> Result<Vec<T>>
where
    F: Fn(&T) -> Vec<Rational>,
{
    let cols: Vec<Vec<Rational>> = candidates.iter().map(&constraint).collect();
    if cols.first().is_none_or(Vec::is_empty) {
        return Ok((0..candidates.len())
            .map(|k| {
                let mut v = vec![Rational::zero(); candidates.len()];
                v[k] = Rational::one();
                combine(&v)
            })
            .collect());
    }
    Ok(Matrix::from_columns(&cols)?
        .kernel_basis()
        .iter()
        .map(|v| combine(v))
        .collect())
}

fn operator_kernel<F: Fn(&Operator) -> Vec<Rational>>(
    candidates: &[Operator],
    constraint: F,
) -> Result<Vec<Operator>> {
    kernel_in_span(candidates, constraint, |c| {
        candidates
            .iter()
            .zip(c)
            .filter(|(_, k)| !k.is_zero())
            .fold(Operator::zero(), |acc, (x, k)| acc.add(&x.scale(k)))
    })
}

fn fourvector_kernel<F: Fn(&FourVector) -> Vec<Rational>>(
    candidates: &[FourVector],
    constraint: F,
) -> Result<Vec<FourVector>> {
    kernel_in_span(candidates, constraint, |c| {
        candidates
            .iter()
            .zip(c)
            .filter(|(_, k)| !k.is_zero())
            .fold(FourVector::zero(), |acc, (x, k)| acc.add(&x.scale(k)))
    })
}

fn pair_roots(list: &[(u8, u8)]) -> Vec<Root> {
    list.iter().map(|&(i, j)| Root::Pair(i, j)).collect()
}

type Constraint0 = Box<dyn Fn(&Operator) -> Vec<Rational>>;
type Constraint1 = Box<dyn Fn(&FourVector) -> Vec<Rational>>;

fn concat0(a: Constraint0, b: Constraint0) -> Constraint0 {
    Box::new(move |x| [a(x), b(x)].concat())
}

fn concat1(a: Constraint1, b: Constraint1) -> Constraint1 {
    Box::new(move |t| [a(t), b(t)].concat())
}

/// Defining data of `g⁽ᵏ⁾`: constraints cutting `g₀` out of sl₈, and candidates plus constraints for `g₁`.
fn definition(k: u32) -> Result<(Constraint0, Vec<FourVector>, Constraint1, Vec<Root>)> {
    let all: Vec<FourVector> = Index4::all()
        .iter()
        .map(|&s| FourVector::basis(s))
        .collect();
    let none: Constraint1 = Box::new(|_| Vec::new());
    Ok(match k {
        2 => (
            Box::new(symplectic_defect),
            all,
            Box::new(b_contraction),
            pair_roots(&[(1, 3), (3, 5), (5, 7), (7, 8)]),
        ),
        3 => (
            Box::new(|x| block_defect(x, &[&W1, &W2])),
            split_monomials(W1, W2),
            none,
            pair_roots(&[(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)]),
        ),
        9 => (
            concat0(
                Box::new(|x| block_defect(x, &[&W1, &W2])),
                Box::new(symplectic_defect),
            ),
            split_monomials(W1, W2),
            Box::new(b_contraction),
            pair_roots(&[(1, 3), (3, 4), (5, 7), (7, 8)]),
        ),
        11 => (
            concat0(
                Box::new(|x| block_defect(x, &[&ODD, &EVEN])),
                Box::new(symplectic_defect),
            ),
            split_monomials(ODD, EVEN),
            Box::new(b_contraction),
            pair_roots(&[(1, 3), (3, 5), (5, 7)]),
        ),
        12 => (
            Box::new(diagonal_copy_defect),
            symmetric_square(),
            Box::new(det_contraction),
            pair_roots(&[(1, 2), (2, 3), (3, 4)]),
        ),
        18 => (
            Box::new(|x| block_defect(x, &[&[1, 2], &[3, 4], &[5, 6], &[7, 8]])),
            (1..=2u8)
                .flat_map(|a| {
                    (3..=4u8).flat_map(move |b| {
                        (5..=6u8).flat_map(move |c| (7..=8u8).map(move |d| wedge([a, b, c, d])))
                    })
                })
                .collect(),
            none,
            pair_roots(&[(1, 2), (3, 4), (5, 6), (7, 8)]),
        ),
        19 => (
            concat0(Box::new(diagonal_copy_defect), Box::new(symplectic_defect)),
            symmetric_square(),
            concat1(Box::new(det_contraction), Box::new(b_contraction)),
            pair_roots(&[(1, 3), (3, 4)]),
        ),
        _ => {
            return usage(format!(
                "no construction for family {k}; expected one of {FAMILIES:?}"
            ))
        }
    })
}

/// Builds `g⁽ᵏ⁾` as exact kernels of its defining constraints.
pub fn build_family(atlas: &Atlas, k: u32) -> Result<SubalgebraSpec> {
    let (c0, candidates, c1, simple_roots) = definition(k)?;
    let sl8: Vec<Operator> = (0..Operator::DIM).map(Operator::basis_element).collect();
    let diag: Vec<Operator> = (1..=7).map(Operator::cartan_generator).collect();
    let basis0 = operator_kernel(&sl8, &c0)?;
    let cartan = operator_kernel(&diag, &c0)?;
    let basis1 = fourvector_kernel(&candidates, &c1)?;
    if cartan.len() != simple_roots.len() {
        return Err(Error::Internal(format!(
            "family {k}: Cartan dimension {} but {} simple roots",
            cartan.len(),
            simple_roots.len()
        )));
    }
    Ok(SubalgebraSpec {
        family: k,
        basis0,
        basis1,
        cartan,
        simple_roots,
        type_label: atlas.family_record(k)?.type_label.clone(),
    })
}

fn span_of(vectors: impl IntoIterator<Item = Vec<Rational>>) -> EchelonBasis {
    let mut ech = EchelonBasis::new();
    for v in vectors {
        ech.insert(v);
    }
    ech
}

/// Exact closure `[g₀,g₀] ⊆ g₀`, `[g₀,g₁] ⊆ g₁`, `[g₁,g₁] ⊆ g₀`.
pub fn check_subalgebra(spec: &SubalgebraSpec) -> Report {
    let mut report = Report::new(format!("family {} closure", spec.family));
    let span0 = span_of(spec.basis0.iter().map(Operator::to_coords));
    let span1 = span_of(spec.basis1.iter().map(FourVector::to_coords));
    let count = |it: &mut dyn Iterator<Item = bool>| it.filter(|ok| !ok).count();
    let bad00 = count(&mut spec.basis0.iter().enumerate().flat_map(|(i, a)| {
        spec.basis0[i + 1..]
            .iter()
            .map(|b| span0.contains(&bracket00(a, b).to_coords()))
    }));
    let bad01 = count(&mut spec.basis0.iter().flat_map(|a| {
        spec.basis1
            .iter()
            .map(|t| span1.contains(&bracket01(a, t).to_coords()))
    }));
    let bad11 = count(&mut spec.basis1.iter().enumerate().flat_map(|(i, s)| {
        spec.basis1[i..]
            .iter()
            .map(|t| span0.contains(&bracket11(s, t).to_coords()))
    }));
    let n0 = spec.basis0.len();
    let n1 = spec.basis1.len();
    report.check(
        format!("family {} [g0, g0]", spec.family),
        format!(
            "{bad00} of {} brackets outside g0",
            n0 * n0.saturating_sub(1) / 2
        ),
        bad00 == 0,
    );
    report.check(
        format!("family {} [g0, g1]", spec.family),
        format!("{bad01} of {} brackets outside g1", n0 * n1),
        bad01 == 0,
    );
    report.check(
        format!("family {} [g1, g1]", spec.family),
        format!("{bad11} of {} brackets outside g0", n1 * (n1 + 1) / 2),
        bad11 == 0,
    );
    report
}

/// The element of the Cartan subalgebra with the given values on the simple roots.
pub fn family_characteristic_to_h(spec: &SubalgebraSpec, marks: &[u32]) -> Result<Operator> {
    if marks.len() != spec.simple_roots.len() {
        return usage(format!(
            "family {} takes {} marks, got {}",
            spec.family,
            spec.simple_roots.len(),
            marks.len()
        ));
    }
    let cols: Vec<Vec<Rational>> = spec
        .cartan
        .iter()
        .map(|c| {
            spec.simple_roots
                .iter()
                .map(|&r| root_value(r, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let rhs: Vec<Rational> = marks.iter().map(|&m| Rational::from(m as i64)).collect();
    let sol = Matrix::from_columns(&cols)?
        .solve(&rhs)?
        .filter(|s| s.kernel.is_empty())
        .ok_or_else(|| {
            Error::Internal(format!(
                "family {}: simple roots do not determine h",
                spec.family
            ))
        })?;
    Ok(spec
        .cartan
        .iter()
        .zip(&sol.particular)
        .fold(Operator::zero(), |acc, (c, k)| acc.add(&c.scale(k))))
}

/// Restricted sl₂ existence for every row of the family's nilpotent table.
pub fn verify_family_table(atlas: &Atlas, spec: &SubalgebraSpec, seed: u64) -> Report {
    let mut report = Report::new(format!("family {} nilpotent table", spec.family));
    let table = match atlas.mixed_table(spec.family) {
        Ok(t) => t,
        Err(e) => {
            report.check("table", e.to_string(), false);
            return report;
        }
    };
    let mut seen: BTreeMap<&[u32], u32> = BTreeMap::new();
    for row in &table.rows {
        let marks: String = row
            .marks
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let label = format!("family {} row {}", spec.family, row.number);
        if let Some(first) = seen.insert(&row.marks, row.number) {
            report.push(
                format!("{label} marks"),
                format!("marks {marks} repeat row {first}"),
                Status::Flagged,
            );
        }
        let outcome = family_characteristic_to_h(spec, &row.marks).and_then(|h| {
            let plus = eigenspace(&h, &Rational::from(2))?;
            let meets = spec
                .basis1
                .iter()
                .any(|t| plus.iter().any(|&s| !t.get(s).is_zero()));
            if !meets {
                return Ok(None);
            }
            random_sl2_for_h(&h, Some(&spec.basis1), seed, RETRIES).map(Some)
        });
        match outcome {
            Ok(Some(Some(_))) => report.push(label, format!("marks {marks}, triple"), Status::Ok),
            Ok(Some(None)) => report.push(
                label,
                format!("marks {marks}, no triple after {RETRIES} draws"),
                Status::Inconclusive,
            ),
            Ok(None) => report.check(
                label,
                format!("marks {marks}, empty 2-eigenspace in g1"),
                false,
            ),
            Err(e) => report.check(label, format!("marks {marks}, {e}"), false),
        }
    }
    report
}

/// Every element of the family's Cartan subspace centralizes `g⁽ᵏ⁾`.
pub fn check_centralizes(atlas: &Atlas, spec: &SubalgebraSpec) -> Report {
    let mut report = Report::new(format!("family {} centralizer", spec.family));
    let basis = match atlas
        .family_record(spec.family)
        .and_then(|r| parse_basis(&r.basis))
    {
        Ok(b) => b,
        Err(e) => {
            report.check("basis", e.to_string(), false);
            return report;
        }
    };
    for (n, p) in basis.iter().enumerate() {
        let p = p.to_fourvector();
        let bad0 = spec
            .basis0
            .iter()
            .filter(|x| !bracket01(x, &p).is_zero())
            .count();
        let bad1 = spec
            .basis1
            .iter()
            .filter(|t| !bracket11(&p, t).is_zero())
            .count();
        report.check(
            format!("family {} basis vector {}", spec.family, n + 1),
            format!("{bad0} elements of g0 and {bad1} of g1 fail to commute"),
            bad0 + bad1 == 0,
        );
    }
    report
}

type Coords = Vec<Vec<Rational>>;

/// `g⁽⁹⁾ = g⁽²⁾ ∩ g⁽³⁾` compared as exact spans in each degree.
pub fn check_intersection(g9: &SubalgebraSpec, g2: &SubalgebraSpec, g3: &SubalgebraSpec) -> Report {
    let mut report = Report::new("family 9 intersection");
    let parts: [(&str, Coords, Coords, Coords); 2] = [
        (
            "degree 0",
            g9.basis0.iter().map(Operator::to_coords).collect(),
            g2.basis0.iter().map(Operator::to_coords).collect(),
            g3.basis0.iter().map(Operator::to_coords).collect(),
        ),
        (
            "degree 1",
            g9.basis1.iter().map(FourVector::to_coords).collect(),
            g2.basis1.iter().map(FourVector::to_coords).collect(),
            g3.basis1.iter().map(FourVector::to_coords).collect(),
        ),
    ];
    for (label, a, b, c) in parts {
        let sb = span_of(b.clone());
        let sc = span_of(c.clone());
        let inside = a.iter().all(|v| sb.contains(v) && sc.contains(v));
        let sum = span_of(b.into_iter().chain(c)).dim();
        let meet = sb.dim() + sc.dim() - sum;
        let own = span_of(a).dim();
        report.check(
            label,
            format!("dim {own}, intersection dim {meet}"),
            inside && own == meet,
        );
    }
    report
}

/// Construction, closure, centralizer and table checks for every family, plus the intersection check.
pub fn verify_families(atlas: &Atlas, seed: u64) -> Report {
    let mut report = Report::new("mixed families");
    let mut built = BTreeMap::new();
    for k in FAMILIES {
        match build_family(atlas, k) {
            Ok(spec) => {
                let expected = expected_dim(&spec.type_label);
                report.check(
                    format!("family {k} dimension"),
                    format!(
                        "{} + {} = {}, type {} has dim {}",
                        spec.basis0.len(),
                        spec.basis1.len(),
                        spec.dim(),
                        spec.type_label,
                        expected.map_or("unknown".into(), |d| d.to_string())
                    ),
                    expected == Some(spec.dim()),
                );
                report.extend(check_subalgebra(&spec));
                report.extend(check_centralizes(atlas, &spec));
                report.extend(verify_family_table(atlas, &spec, seed));
                built.insert(k, spec);
            }
            Err(e) => report.check(format!("family {k}"), e.to_string(), false),
        }
    }
    if let (Some(g9), Some(g2), Some(g3)) = (built.get(&9), built.get(&2), built.get(&3)) {
        report.extend(check_intersection(g9, g2, g3));
    }
    report
}

/// Dimension of a simple Lie algebra of simply-laced type given by its label.
fn expected_dim(label: &str) -> Option<usize> {
    let t: crate::roots::DiagramType = label.parse().ok()?;
    Some(t.root_count() + t.rank())
}
