use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::characteristic::{eigenspace, h_to_characteristic, Characteristic};
use crate::error::{usage, Error, Result};
use crate::exactmath::{EchelonBasis, Matrix, Poly, Rational};
use crate::liealg::{bracket01, bracket11, FourVector, Index4, Operator};

/// `(h, e, f)` with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Triple {
    pub h: Operator,
    pub e: FourVector,
    pub f: FourVector,
}

impl Sl2Triple {
    pub fn is_valid(&self) -> bool {
        let two = Rational::from(2);
        bracket01(&self.h, &self.e) == self.e.scale(&two)
            && bracket01(&self.h, &self.f) == self.f.scale(&-two)
            && bracket11(&self.e, &self.f) == self.h
    }

    /// Dominant marks of `h`, computed from its eigenvalues on ℚ⁸.
    pub fn characteristic(&self) -> Result<Characteristic> {
        if self.h.is_diagonal() {
            return h_to_characteristic(&self.h);
        }
        let eig = rational_eigenvalues(self.h.matrix())?;
        h_to_characteristic(&Operator::diagonal(&eig)?)
    }
}

impl fmt::Display for Sl2Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "h = {}", self.h)?;
        writeln!(f, "e = {}", self.e)?;
        write!(f, "f = {}", self.f)
    }
}

/// Eigenvalues with multiplicity of a matrix whose spectrum lies in `⅛ℤ`.
fn rational_eigenvalues(m: &Matrix) -> Result<Vec<Rational>> {
    let mut p = m.charpoly()?;
    let n = p.degree().unwrap_or(0);
    let bound = p
        .coeffs()
        .iter()
        .rev()
        .skip(1)
        .enumerate()
        .map(|(k, c)| c.abs().to_f64().powf(1.0 / (k + 1) as f64))
        .fold(0.0, f64::max);
    let limit = (16.0 * bound).ceil() as i64 + 8;
    let mut out = Vec::with_capacity(n);
    for k in -limit..=limit {
        let x = Rational::new(k, 8);
        let lin = Poly::linear(-x.clone());
        loop {
            let (q, r) = p.divrem(&lin);
            if !r.is_zero() || p.degree() == Some(0) {
                break;
            }
            out.push(x.clone());
            p = q;
        }
    }
    if out.len() != n {
        return Err(Error::Internal(format!(
            "characteristic polynomial has non-rational roots; found {} of {n}",
            out.len()
        )));
    }
    Ok(out)
}

fn operator_coords(x: &Operator) -> Vec<Rational> {
    x.to_coords()
}

/// Some `f` on the `−2` eigenspace of `h` with `[e, f] = h`, found with free variables set to zero.
pub fn solve_f(h: &Operator, e: &FourVector) -> Result<Option<FourVector>> {
    if bracket01(h, e) != e.scale(&Rational::from(2)) {
        return usage("e is not in the 2-eigenspace of h");
    }
    let support = eigenspace(h, &Rational::from(-2))?;
    solve_f_on(
        h,
        e,
        &support
            .into_iter()
            .map(FourVector::basis)
            .collect::<Vec<_>>(),
    )
}

/// Solves `[e, f] = h` for `f` in the span of `candidates`.
pub fn solve_f_on(
    h: &Operator,
    e: &FourVector,
    candidates: &[FourVector],
) -> Result<Option<FourVector>> {
    if candidates.is_empty() {
        return Ok(h.is_zero().then(FourVector::zero));
    }
    let cols: Vec<Vec<Rational>> = candidates
        .iter()
        .map(|c| operator_coords(&bracket11(e, c)))
        .collect();
    let a = Matrix::from_columns(&cols)?;
    let Some(sol) = a.solve(&operator_coords(h))? else {
        return Ok(None);
    };
    let f = candidates
        .iter()
        .zip(&sol.particular)
        .filter(|(_, c)| !c.is_zero())
        .fold(FourVector::zero(), |acc, (v, c)| acc.add(&v.scale(c)));
    Ok(Some(f))
}

fn columns_of<F: Fn(&FourVector) -> Vec<Rational>>(map: F) -> Result<Matrix> {
    let cols: Vec<Vec<Rational>> = Index4::all()
        .iter()
        .map(|&s| map(&FourVector::basis(s)))
        .collect();
    Matrix::from_columns(&cols)
}

/// Completes a nilpotent `e` to an sl₂ triple through `e`, with `h` diagonal when possible.
///
/// Starts from [`sl2_through`]. When a diagonal operator with the same spectrum
/// as its `h` also completes `e`, that one is used.
pub fn complete_sl2(e: &FourVector) -> Result<Option<Sl2Triple>> {
    let Some(triple) = sl2_through(e)? else {
        return Ok(None);
    };
    if triple.h.is_diagonal() {
        return Ok(Some(triple));
    }
    let eig = rational_eigenvalues(triple.h.matrix())?;
    Ok(Some(diagonal_completion(e, eig)?.unwrap_or(triple)))
}

/// Some sl₂ triple through `e`, with `h` not necessarily diagonal.
///
/// First `f₀` with `[[e,f₀],e] = 2e` is found and `h = [e,f₀]`. Then `f = f₀ − z`
/// where `z` centralizes `e` and `[h,z] + 2z = [h,f₀] + 2f₀`.
pub fn sl2_through(e: &FourVector) -> Result<Option<Sl2Triple>> {
    if e.is_zero() {
        return Ok(None);
    }
    let two = Rational::from(2);
    let first = columns_of(|t| bracket01(&bracket11(e, t), e).to_coords())?;
    let Some(sol) = first.solve(&e.scale(&two).to_coords())? else {
        return Ok(None);
    };
    let f0 = FourVector::from_coords(&sol.particular)?;
    let h = bracket11(e, &f0);

    let centralizer = columns_of(|t| bracket11(e, t).to_coords())?;
    let shifted = columns_of(|t| bracket01(&h, t).add(&t.scale(&two)).to_coords())?;
    let rhs: Vec<Rational> = vec![Rational::zero(); centralizer.rows()]
        .into_iter()
        .chain(bracket01(&h, &f0).add(&f0.scale(&two)).to_coords())
        .collect();
    let z = centralizer
        .vstack(&shifted)?
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("no centralizer correction for the sl2 triple".into()))?;
    let f = f0.sub(&FourVector::from_coords(&z.particular)?);
    let triple = Sl2Triple { h, e: e.clone(), f };
    if !triple.is_valid() {
        return Err(Error::Internal(
            "constructed triple fails the sl2 relations".into(),
        ));
    }
    Ok(Some(triple))
}

/// Tries every arrangement of `eig` on the diagonal as the characteristic of `e`.
fn diagonal_completion(e: &FourVector, mut eig: Vec<Rational>) -> Result<Option<Sl2Triple>> {
    eig.sort();
    loop {
        let h = Operator::diagonal(&eig)?;
        let two = Rational::from(2);
        if bracket01(&h, e) == e.scale(&two) {
            if let Some(f) = solve_f(&h, e)? {
                return Ok(Some(Sl2Triple { h, e: e.clone(), f }));
            }
        }
        if !next_permutation(&mut eig) {
            return Ok(None);
        }
    }
}

fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Projections of `vectors` onto the wedge coordinates in `support`, reduced to a basis.
fn restricted_basis(vectors: &[FourVector], support: &[Index4]) -> Vec<FourVector> {
    let mut ech = EchelonBasis::new();
    let mut out = Vec::new();
    for v in vectors {
        let proj = FourVector::from_terms(support.iter().map(|&s| (s, v.get(s))));
        if !proj.is_zero() && ech.insert(proj.to_coords()) {
            out.push(proj);
        }
    }
    out
}

/// Draws `e` at random from the `2`-eigenspace of `h` (intersected with the
/// span of `restriction` when given) and solves for `f`, retrying up to `retries` times.
pub fn random_sl2_for_h(
    h: &Operator,
    restriction: Option<&[FourVector]>,
    seed: u64,
    retries: usize,
) -> Result<Option<Sl2Triple>> {
    let plus = eigenspace(h, &Rational::from(2))?;
    let minus = eigenspace(h, &Rational::from(-2))?;
    let (plus_basis, minus_basis) = match restriction {
        Some(r) => (restricted_basis(r, &plus), restricted_basis(r, &minus)),
        None => (
            plus.into_iter().map(FourVector::basis).collect(),
            minus.into_iter().map(FourVector::basis).collect(),
        ),
    };
    if plus_basis.is_empty() || h.is_zero() {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..retries.max(1) {
        let e = plus_basis.iter().fold(FourVector::zero(), |acc, b| {
            acc.add(&b.scale(&Rational::from(rng.gen_range(1..=97i64))))
        });
        if let Some(f) = solve_f_on(h, &e, &minus_basis)? {
            let triple = Sl2Triple { h: h.clone(), e, f };
            if triple.is_valid() {
                return Ok(Some(triple));
            }
        }
    }
    Ok(None)
}

/// Default enumeration cap for [`search_normal_form`].
pub const SEARCH_CAP: u64 = 10_000_000;

fn quad_vector(s: Index4) -> Vec<Rational> {
    let mut v = vec![Rational::from(-4); 8];
    for i in s.indices() {
        v[i as usize - 1] = Rational::from(4);
    }
    v
}

/// First subset of the `2`-eigenspace basis, in order of size and then
/// lexicographically, whose roots are linearly independent and whose sum completes to a triple.
pub fn search_normal_form(h: &Operator, max_support: usize) -> Result<Option<FourVector>> {
    search_normal_form_capped(h, max_support, SEARCH_CAP)
}

pub fn search_normal_form_capped(
    h: &Operator,
    max_support: usize,
    cap: u64,
) -> Result<Option<FourVector>> {
    let basis = eigenspace(h, &Rational::from(2))?;
    let mut visited = 0u64;
    for size in 1..=max_support.min(basis.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            visited += 1;
            if visited > cap {
                return Err(Error::SearchLimit(cap));
            }
            let chosen: Vec<Index4> = idx.iter().map(|&i| basis[i]).collect();
            let mut ech = EchelonBasis::new();
            if chosen.iter().all(|&s| ech.insert(quad_vector(s))) {
                let e = chosen
                    .iter()
                    .fold(FourVector::zero(), |acc, &s| acc.add(&FourVector::basis(s)));
                if solve_f(h, &e)?.is_some() {
                    return Ok(Some(e));
                }
            }
            if !next_combination(&mut idx, basis.len()) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
        return false;
    };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// `dim {X ∈ sl₈ : [X, e] = 0}`.
pub fn stabilizer_dim(e: &FourVector) -> usize {
    Operator::DIM - orbit_dim(e)
}

/// Rank of `X ↦ [X, e]` on sl₈.
pub fn orbit_dim(e: &FourVector) -> usize {
    let cols: Vec<Vec<Rational>> = (0..Operator::DIM)
        .map(|n| bracket01(&Operator::basis_element(n), e).to_coords())
        .collect();
    Matrix::from_columns(&cols).expect("rectangular").rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(s: &str) -> FourVector {
        FourVector::parse_expr(s).unwrap()
    }

    fn h_of(marks: &str) -> Operator {
        marks.parse::<Characteristic>().unwrap().to_h()
    }

    #[test]
    fn solve_f_examples() {
        let h = h_of("0001000");
        assert_eq!(solve_f(&h, &fv("e1234")).unwrap(), Some(fv("e5678")));
        assert_eq!(solve_f(&h, &FourVector::zero()).unwrap(), None);
        assert!(solve_f(&h, &fv("e5678")).is_err());
        let h22 = h_of("1211121");
        let e22 = fv("e2456 + e2347 + e1357 + e1348 + e1268");
        let f = solve_f(&h22, &e22).unwrap().unwrap();
        assert!(Sl2Triple {
            h: h22.clone(),
            e: e22.clone(),
            f
        }
        .is_valid());
        let printed = fv("-8e3457 + 5e2567 + 9e2468 + 5e1568 - 8e1378");
        assert!(Sl2Triple {
            h: h22,
            e: e22,
            f: printed
        }
        .is_valid());
    }

    #[test]
    fn complete_examples() {
        let t = complete_sl2(&fv("e1234")).unwrap().unwrap();
        assert_eq!(t.h, h_of("0001000"));
        assert_eq!(t.f, fv("e5678"));
        let t = complete_sl2(&fv("e1256 + e1347 + e2348")).unwrap().unwrap();
        assert!(t.is_valid());
        assert_eq!(t.characteristic().unwrap().to_string(), "0102010");
        assert!(complete_sl2(&FourVector::zero()).unwrap().is_none());
        assert!(complete_sl2(&fv("e1234 + e5678")).unwrap().is_none());
    }

    #[test]
    fn eigenvalues_of_non_diagonal() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, -1]]);
        let mut eig = rational_eigenvalues(&m).unwrap();
        eig.sort();
        assert_eq!(eig, [Rational::from(-1), Rational::from(1)]);
        assert!(rational_eigenvalues(&Matrix::from_i64(&[&[0, 1], &[2, 0]])).is_err());
    }

    #[test]
    fn random_examples() {
        let t = random_sl2_for_h(&h_of("0001000"), None, 42, 5)
            .unwrap()
            .unwrap();
        assert_eq!(
            t.e.support().collect::<Vec<_>>(),
            [Index4::new([1, 2, 3, 4]).unwrap()]
        );
        assert!(random_sl2_for_h(&Operator::zero(), None, 42, 5)
            .unwrap()
            .is_none());
        let t = random_sl2_for_h(&h_of("0102010"), None, 1, 20)
            .unwrap()
            .unwrap();
        assert!(t.is_valid());
    }

    #[test]
    fn search_examples() {
        assert_eq!(
            search_normal_form(&h_of("0001000"), 1).unwrap(),
            Some(fv("e1234"))
        );
        let e = search_normal_form(&h_of("0102010"), 3).unwrap().unwrap();
        assert_eq!(e.len(), 3);
        assert!(solve_f(&h_of("0102010"), &e).unwrap().is_some());
        assert_eq!(search_normal_form(&h_of("0001000"), 0).unwrap(), None);
        assert!(matches!(
            search_normal_form_capped(&h_of("0102010"), 3, 2),
            Err(Error::SearchLimit(2))
        ));
    }

    #[test]
    fn dimensions() {
        assert_eq!(stabilizer_dim(&fv("e1234")), 46);
        assert_eq!(orbit_dim(&fv("e2456 + e2347 + e1357 + e1348 + e1268")), 54);
        assert_eq!(
            stabilizer_dim(&fv("e2456 + e2347 + e1357 + e1348 + e1268")),
            9
        );
        assert_eq!(
            orbit_dim(&fv("e3456 + e2457 + e2367 + e1467 + e2348 + e1358 + e1268")),
            63
        );
        assert_eq!(orbit_dim(&FourVector::zero()), 0);
    }

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen, [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]);
    }
}
