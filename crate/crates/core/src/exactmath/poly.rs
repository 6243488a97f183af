use std::fmt;

use super::matrix::{Matrix, SparseMatrix};
use super::rational::Rational;

/// Univariate polynomial over ℚ, coefficients from the constant term upward.
///
/// The coefficient vector never ends in a zero, so the zero polynomial is empty.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&x| Rational::from(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn x() -> Self {
        Poly::new(vec![Rational::zero(), Rational::one()])
    }

    /// `t + c`.
    pub fn linear(c: Rational) -> Self {
        Poly::new(vec![c, Rational::one()])
    }

    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_x(&self) -> bool {
        *self == Poly::x()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder. Panics on division by zero.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("polynomial division by zero");
        let Some(sd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if sd < dd {
            return (Poly::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut qv = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &r[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    r[k + j] -= &c * b;
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let g = self.gcd(other);
        self.mul(other).divrem(&g).0.monic()
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from(i as i64))
                .collect(),
        )
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Poly {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inverse_mod(&self, m: &Poly) -> Option<Poly> {
        // Extended Euclid tracking only the coefficient of `self`.
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        Some(s0.scale(&r0.leading().recip()).rem(m))
    }

    /// `self(s) mod m`, by Horner's rule.
    pub fn compose_mod(&self, s: &Poly, m: &Poly) -> Poly {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(s).add(&Poly::constant(c.clone())).rem(m);
        }
        acc
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(M)` as a dense matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square(), "polynomial of a non-square matrix");
        self.eval_sparse(&m.to_sparse())
    }

    /// `self(M)` computed column by column with sparse matrix-vector products.
    pub fn eval_sparse(&self, m: &SparseMatrix) -> Matrix {
        let n = m.rows;
        if self.is_zero() {
            return Matrix::zeros(n, n);
        }
        if self.is_x() {
            return m.to_dense();
        }
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| {
                let mut acc = vec![Rational::zero(); n];
                for c in self.coeffs.iter().rev() {
                    acc = m.mul_vec(&acc);
                    if !c.is_zero() {
                        acc[j] += c;
                    }
                }
                acc
            })
            .collect();
        Matrix::from_columns(&cols).expect("square evaluation")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let var = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            let term = match (c.is_one(), var.is_empty()) {
                (true, false) => var,
                (_, true) => c.to_string(),
                _ if *c == -Rational::one() => format!("-{var}"),
                _ => format!("{c}*{var}"),
            };
            terms.push(term);
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rational::q;

    #[test]
    fn division_identity() {
        let a = Poly::from_i64(&[3, 0, -2, 5, 1]);
        let b = Poly::from_i64(&[1, 2, 3]);
        let (qt, r) = a.divrem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn gcd_lcm() {
        // (t-1)(t-2) and (t-1)(t+3)
        let a = Poly::from_i64(&[2, -3, 1]);
        let b = Poly::from_i64(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), Poly::from_i64(&[-1, 1]));
        assert_eq!(a.lcm(&b), Poly::from_i64(&[6, -7, 0, 1]));
    }

    #[test]
    fn squarefree() {
        // (t-1)^2 (t+2)
        let p = Poly::from_i64(&[-1, 1])
            .mul(&Poly::from_i64(&[-1, 1]))
            .mul(&Poly::from_i64(&[2, 1]));
        assert!(!p.is_squarefree());
        assert_eq!(p.squarefree_part(), Poly::from_i64(&[-2, 1, 1]));
        assert!(p.squarefree_part().is_squarefree());
    }

    #[test]
    fn modular_inverse() {
        let m = Poly::from_i64(&[1, 0, 1]);
        let a = Poly::from_i64(&[1, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!(a.mul(&inv).rem(&m), Poly::one());
        assert!(Poly::from_i64(&[0, 1])
            .inverse_mod(&Poly::from_i64(&[0, 0, 1]))
            .is_none());
    }

    #[test]
    fn evaluation() {
        let p = Poly::from_i64(&[1, -3, 2]);
        assert_eq!(p.eval(&q(1, 2)), Rational::zero());
        let m = Matrix::from_i64(&[&[1, 1], &[0, 1]]);
        assert_eq!(p.eval_matrix(&m), Matrix::from_i64(&[&[0, 1], &[0, 0]]));
    }

    #[test]
    fn display() {
        assert_eq!(Poly::from_i64(&[-2, -5, 1]).to_string(), "t^2 - 5*t - 2");
        assert_eq!(Poly::zero().to_string(), "0");
    }
}
