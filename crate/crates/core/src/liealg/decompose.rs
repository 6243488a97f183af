use super::graded::{ad_sparse, killing_form, GradedElement, DIM};
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::exactmath::{jordan_chevalley, Matrix, Rational};

/// True iff `ad x` is nilpotent.
///
/// A nonzero Killing norm rules nilpotence out at once; otherwise each basis
/// vector is pushed through `ad x` until it dies or 133 steps have passed.
pub fn is_nilpotent(x: &GradedElement) -> bool {
    if x.is_zero() {
        return true;
    }
    if !killing_form(x, x).is_zero() {
        return false;
    }
    let ad = ad_sparse(x);
    (0..DIM).all(|j| {
        let mut v = vec![Rational::zero(); DIM];
        v[j] = Rational::one();
        for _ in 0..DIM {
            v = ad.mul_vec(&v);
            if v.iter().all(Rational::is_zero) {
                return true;
            }
        }
        false
    })
}

/// Jordan decomposition `x = s + n` in g, `[s, n] = 0`, `s` semisimple and `n` nilpotent.
pub fn jordan_decompose(x: &GradedElement) -> Result<(GradedElement, GradedElement)> {
    let (_, big_n) = jordan_chevalley(&ad_sparse(x).to_dense())?;
    if big_n.is_zero() {
        return Ok((x.clone(), GradedElement::zero()));
    }
    let n = preimage_of_ad(&big_n)?;
    Ok((x.sub(&n), n))
}

/// Probe elements whose joint centralizer is zero: a regular diagonal element
/// and the sum of the simple root vectors `E_{i,i+1}`.
fn probes() -> [GradedElement; 2] {
    let d: Vec<Rational> = [1, 2, 4, 8, 16, 32, 64, -127]
        .into_iter()
        .map(Rational::from)
        .collect();
    let h = Operator::diagonal(&d).expect("traceless");
    let e = (1..8).fold(Operator::zero(), |acc, i| {
        acc.add(&Operator::unit(i, i + 1))
    });
    [h.into(), e.into()]
}

/// The unique `n` with `ad n = target`; `ad n · v = −ad v · n` turns this into a linear system.
fn preimage_of_ad(target: &Matrix) -> Result<GradedElement> {
    let mut system = Matrix::zeros(0, DIM);
    let mut rhs = Vec::new();
    for v in probes() {
        let block = ad_sparse(&v).to_dense().scale(&-Rational::one());
        system = system.vstack(&block)?;
        rhs.extend(target.mul_vec(&v.to_coords())?);
    }
    let sol = system
        .solve(&rhs)?
        .ok_or_else(|| Error::Internal("ad n = N has no solution".into()))?;
    if !sol.kernel.is_empty() {
        return Err(Error::Internal(
            "probe elements have a common centralizer".into(),
        ));
    }
    let n = GradedElement::from_coords(&sol.particular)?;
    if ad_sparse(&n).to_dense() != *target {
        return Err(Error::Internal(
            "ad n differs from the nilpotent part of ad x".into(),
        ));
    }
    Ok(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::minimal_polynomial;
    use crate::liealg::{ad_matrix, bracket, FourVector};

    fn fv(s: &str) -> GradedElement {
        FourVector::parse_expr(s).unwrap().into()
    }

    #[test]
    fn nilpotency() {
        assert!(is_nilpotent(&fv("e1234")));
        assert!(is_nilpotent(&GradedElement::zero()));
        assert!(!is_nilpotent(&fv("e1234 + e5678")));
        assert!(is_nilpotent(&Operator::unit(1, 2).into()));
        assert!(!is_nilpotent(&Operator::cartan_generator(3).into()));
        assert!(is_nilpotent(&fv("e1234 + e1256 + e1357")));
    }

    #[test]
    fn semisimple_input() {
        let p1 = fv("e1234 + e5678");
        let (s, n) = jordan_decompose(&p1).unwrap();
        assert_eq!(s, p1);
        assert!(n.is_zero());
    }

    #[test]
    fn nilpotent_input() {
        let e = fv("e1234");
        let (s, n) = jordan_decompose(&e).unwrap();
        assert!(s.is_zero());
        assert_eq!(n, e);
    }

    #[test]
    fn mixed_input() {
        // p = 2(p₁ + p₃ − p₇) commutes with the nilpotent e₁₃₅₇.
        let p = fv("2e1234 + 2e5678 + 2e1256 + 2e3478 + 2e1278 + 2e3456");
        let e = fv("e1357");
        assert!(bracket(&p, &e).is_zero());
        assert!(is_nilpotent(&e));
        let (s, n) = jordan_decompose(&p.add(&e)).unwrap();
        assert_eq!(s, p);
        assert_eq!(n, e);
        let (s2, n2) = jordan_decompose(&s).unwrap();
        assert_eq!(s2, s);
        assert!(n2.is_zero());
        assert!(minimal_polynomial(&ad_matrix(&s)).unwrap().is_squarefree());
    }
}
