use super::matrix::{EchelonBasis, Matrix, SparseMatrix};
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{usage, Result};

/// Minimal polynomial of a square matrix.
///
/// Built as the lcm of the annihilators of basis vectors, skipping any basis
/// vector already inside the invariant subspace spanned so far.
pub fn minimal_polynomial(m: &Matrix) -> Result<Poly> {
    if !m.is_square() {
        return usage("minimal polynomial of a non-square matrix");
    }
    Ok(minimal_polynomial_sparse(&m.to_sparse()))
}

pub(crate) fn minimal_polynomial_sparse(m: &SparseMatrix) -> Poly {
    let n = m.rows;
    let mut span = EchelonBasis::new();
    let mut lcm = Poly::one();
    for j in 0..n {
        if span.dim() == n {
            break;
        }
        let mut e = vec![Rational::zero(); n];
        e[j] = Rational::one();
        if span.contains(&e) {
            continue;
        }
        let (ann, krylov) = local_annihilator(m, e);
        for v in krylov {
            span.insert(v);
        }
        lcm = lcm.lcm(&ann);
    }
    lcm
}

/// Monic annihilator of `v` together with its Krylov vectors `v, Mv, …`.
fn local_annihilator(m: &SparseMatrix, v: Vec<Rational>) -> (Poly, Vec<Vec<Rational>>) {
    // Each reduced vector carries the polynomial producing it from `v`.
    let mut reduced: Vec<(usize, Vec<Rational>, Poly)> = Vec::new();
    let mut krylov = Vec::new();
    let mut cur = v;
    let mut k = 0;
    loop {
        let mut w = cur.clone();
        let mut poly = Poly::monomial(k, Rational::one());
        for (p, row, rp) in &reduced {
            if w[*p].is_zero() {
                continue;
            }
            let f = &w[*p] / &row[*p];
            for (i, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    w[i] -= &f * x;
                }
            }
            poly = poly.sub(&rp.scale(&f));
        }
        match w.iter().position(|x| !x.is_zero()) {
            None => return (poly.monic(), krylov),
            Some(p) => reduced.push((p, w, poly)),
        }
        let next = m.mul_vec(&cur);
        krylov.push(cur);
        cur = next;
        k += 1;
    }
}

/// Multiplicative Jordan–Chevalley split `M = S + N` with `S` semisimple,
/// `N` nilpotent and both polynomials in `M`.
///
/// The polynomial for `S` is obtained by Newton iteration on the squarefree
/// part of the minimal polynomial, so no eigenvalues are ever extracted.
pub fn jordan_chevalley(m: &Matrix) -> Result<(Matrix, Matrix)> {
    if !m.is_square() {
        return usage("Jordan–Chevalley split of a non-square matrix");
    }
    let sparse = m.to_sparse();
    let s_poly = semisimple_polynomial(&minimal_polynomial_sparse(&sparse));
    let s = s_poly.eval_sparse(&sparse);
    let n = m.sub(&s)?;
    Ok((s, n))
}

/// Polynomial `s(t)` with `s(M)` the semisimple part of any `M` with minimal polynomial `minpoly`.
pub fn semisimple_polynomial(minpoly: &Poly) -> Poly {
    if minpoly.degree().unwrap_or(0) == 0 {
        return Poly::zero();
    }
    let p = minpoly.squarefree_part();
    let dp = p.derivative();
    let mut s = Poly::x().rem(minpoly);
    loop {
        let val = p.compose_mod(&s, minpoly);
        if val.is_zero() {
            return s;
        }
        let deriv = dp.compose_mod(&s, minpoly);
        let inv = deriv
            .inverse_mod(minpoly)
            .expect("derivative of squarefree part is a unit modulo the minimal polynomial");
        s = s.sub(&val.mul(&inv)).rem(minpoly);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    fn check_split(m: &Matrix) -> (Matrix, Matrix) {
        let (s, n) = jordan_chevalley(m).unwrap();
        assert_eq!(s.add(&n).unwrap(), *m);
        assert_eq!(s.mul(&n).unwrap(), n.mul(&s).unwrap());
        let mut p = n.clone();
        for _ in 0..m.rows() {
            p = p.mul(&n).unwrap();
        }
        assert!(p.is_zero());
        assert!(minimal_polynomial(&s).unwrap().is_squarefree());
        (s, n)
    }

    #[test]
    fn nilpotent_block() {
        let m = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        let (s, n) = check_split(&m);
        assert!(s.is_zero());
        assert_eq!(n, m);
    }

    #[test]
    fn diagonal_is_semisimple() {
        let m = Matrix::from_i64(&[&[1, 0], &[0, 2]]);
        let (s, n) = check_split(&m);
        assert_eq!(s, m);
        assert!(n.is_zero());
    }

    #[test]
    fn classic_shear() {
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        let (s, n) = check_split(&m);
        assert_eq!(s, Matrix::identity(2));
        assert_eq!(n, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn mixed_blocks_conjugated() {
        // Jordan blocks J2(3) ⊕ J1(-1) ⊕ J2(0), conjugated by a unimodular matrix.
        let j = Matrix::from_i64(&[
            &[3, 1, 0, 0, 0],
            &[0, 3, 0, 0, 0],
            &[0, 0, -1, 0, 0],
            &[0, 0, 0, 0, 1],
            &[0, 0, 0, 0, 0],
        ]);
        let p = Matrix::from_i64(&[
            &[1, 2, 0, 1, 0],
            &[0, 1, 3, 0, 1],
            &[0, 0, 1, 2, 0],
            &[0, 0, 0, 1, 4],
            &[0, 0, 0, 0, 1],
        ]);
        let pinv = p.inverse().unwrap().unwrap();
        let m = p.mul(&j).unwrap().mul(&pinv).unwrap();
        let (s, _) = check_split(&m);
        let d = Matrix::diagonal(&[3.into(), 3.into(), (-1).into(), 0.into(), 0.into()]);
        assert_eq!(s, p.mul(&d).unwrap().mul(&pinv).unwrap());
    }

    #[test]
    fn irrational_eigenvalues() {
        // Companion of (t^2 - 2)^2: semisimple part has minimal polynomial t^2 - 2.
        let m = Matrix::from_i64(&[&[0, 0, 0, -4], &[1, 0, 0, 0], &[0, 1, 0, 4], &[0, 0, 1, 0]]);
        let (s, _) = check_split(&m);
        assert_eq!(minimal_polynomial(&s).unwrap(), Poly::from_i64(&[-2, 0, 1]));
    }

    #[test]
    fn minimal_polynomial_divides_charpoly() {
        let m = Matrix::from_rows(vec![
            vec![q(1, 2), 1.into(), 0.into()],
            vec![0.into(), q(1, 2), 0.into()],
            vec![0.into(), 0.into(), q(1, 2)],
        ])
        .unwrap();
        let mp = minimal_polynomial(&m).unwrap();
        assert_eq!(mp, Poly::linear(q(-1, 2)).mul(&Poly::linear(q(-1, 2))));
        let cp = m.charpoly().unwrap();
        assert!(cp.rem(&mp).is_zero());
        assert!(cp.eval_matrix(&m).is_zero());
    }
}
