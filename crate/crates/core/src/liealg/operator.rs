use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{Matrix, Rational};

/// Traceless 8×8 matrix, an element of sl₈.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct Operator(Matrix);

impl Operator {
    /// Number of sl₈ coordinates: 56 off-diagonal entries and 7 diagonal ones.
    pub const DIM: usize = 63;

    pub fn new(m: Matrix) -> Result<Self> {
        if m.rows() != 8 || m.cols() != 8 {
            return Err(Error::Usage(format!(
                "operator must be 8x8, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if !m.trace().is_zero() {
            return Err(Error::Usage(format!("operator has trace {}", m.trace())));
        }
        Ok(Operator(m))
    }

    pub fn zero() -> Self {
        Operator(Matrix::zeros(8, 8))
    }

    /// Matrix unit `E_ij` (1-based, `i ≠ j`).
    pub fn unit(i: usize, j: usize) -> Self {
        assert!(
            i != j && (1..=8).contains(&i) && (1..=8).contains(&j),
            "bad matrix unit E{i}{j}"
        );
        let mut m = Matrix::zeros(8, 8);
        m[(i - 1, j - 1)] = Rational::one();
        Operator(m)
    }

    pub fn diagonal(d: &[Rational]) -> Result<Self> {
        if d.len() != 8 {
            return Err(Error::Usage(format!(
                "diagonal needs 8 entries, got {}",
                d.len()
            )));
        }
        Operator::new(Matrix::diagonal(d))
    }

    /// `d_i = ⅛·diag((8−i)^i, (−i)^(8−i))`, dual to the simple roots `ε_i − ε_{i+1}`.
    pub fn cartan_generator(i: usize) -> Self {
        assert!((1..=7).contains(&i));
        let d: Vec<Rational> = (1..=8)
            .map(|k| {
                if k <= i {
                    Rational::new(8 - i as i64, 8)
                } else {
                    Rational::new(-(i as i64), 8)
                }
            })
            .collect();
        Operator::diagonal(&d).expect("traceless by construction")
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Entry in 1-based row `i`, column `j`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.0[(i - 1, j - 1)]
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_diagonal(&self) -> bool {
        self.0.is_diagonal()
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..8).map(|i| self.0[(i, i)].clone()).collect()
    }

    pub fn add(&self, other: &Operator) -> Operator {
        Operator(self.0.add(&other.0).expect("8x8"))
    }

    pub fn sub(&self, other: &Operator) -> Operator {
        Operator(self.0.sub(&other.0).expect("8x8"))
    }

    pub fn scale(&self, k: &Rational) -> Operator {
        Operator(self.0.scale(k))
    }

    /// `[A, B] = AB − BA`.
    pub fn bracket(&self, other: &Operator) -> Operator {
        let ab = self.0.mul(&other.0).expect("8x8");
        let ba = other.0.mul(&self.0).expect("8x8");
        Operator(ab.sub(&ba).expect("8x8"))
    }

    /// Coordinates: the 56 off-diagonal entries `(i, j)` in lexicographic order,
    /// then `a_i = X_ii − X_{i+1,i+1}` for `i = 1..7`.
    pub fn to_coords(&self) -> Vec<Rational> {
        let mut v = Vec::with_capacity(Self::DIM);
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    v.push(self.0[(i, j)].clone());
                }
            }
        }
        for i in 0..7 {
            v.push(&self.0[(i, i)] - &self.0[(i + 1, i + 1)]);
        }
        v
    }

    pub fn from_coords(v: &[Rational]) -> Result<Self> {
        if v.len() != Self::DIM {
            return Err(Error::Usage(format!(
                "expected 63 coordinates, got {}",
                v.len()
            )));
        }
        let mut m = Matrix::zeros(8, 8);
        let mut n = 0;
        for i in 0..8 {
            for j in 0..8 {
                if i != j {
                    m[(i, j)] = v[n].clone();
                    n += 1;
                }
            }
        }
        let mut out = Operator(m);
        for (i, a) in v[56..].iter().enumerate() {
            if !a.is_zero() {
                out = out.add(&Operator::cartan_generator(i + 1).scale(a));
            }
        }
        Ok(out)
    }

    /// Basis element number `n` of sl₈ in coordinate order.
    pub fn basis_element(n: usize) -> Operator {
        assert!(n < Self::DIM);
        if n < 56 {
            let i = n / 7;
            let r = n % 7;
            let j = if r < i { r } else { r + 1 };
            Operator::unit(i + 1, j + 1)
        } else {
            Operator::cartan_generator(n - 55)
        }
    }
}

impl TryFrom<Matrix> for Operator {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        Operator::new(m)
    }
}

impl From<Operator> for Matrix {
    fn from(op: Operator) -> Matrix {
        op.0
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            let d: Vec<String> = self
                .diagonal_entries()
                .iter()
                .map(ToString::to_string)
                .collect();
            write!(f, "diag({})", d.join(", "))
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Debug for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::q;

    #[test]
    fn cartan_generators_dual_to_simple_roots() {
        for i in 1..=7 {
            let d = Operator::cartan_generator(i).diagonal_entries();
            for j in 1..=7 {
                let v = &d[j - 1] - &d[j];
                assert_eq!(
                    v,
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                );
            }
        }
        assert_eq!(
            Operator::cartan_generator(4).diagonal_entries(),
            [
                q(1, 2),
                q(1, 2),
                q(1, 2),
                q(1, 2),
                q(-1, 2),
                q(-1, 2),
                q(-1, 2),
                q(-1, 2)
            ]
        );
    }

    #[test]
    fn coordinates_round_trip() {
        for n in 0..Operator::DIM {
            let b = Operator::basis_element(n);
            let c = b.to_coords();
            for (k, x) in c.iter().enumerate() {
                assert_eq!(x.is_one(), k == n);
                assert!(k == n || x.is_zero());
            }
            assert_eq!(Operator::from_coords(&c).unwrap(), b);
        }
        assert_eq!(Operator::basis_element(0), Operator::unit(1, 2));
        assert_eq!(Operator::basis_element(7), Operator::unit(2, 1));
        assert_eq!(Operator::basis_element(55), Operator::unit(8, 7));
    }

    #[test]
    fn commutators() {
        let h = Operator::unit(1, 2).bracket(&Operator::unit(2, 1));
        let mut d = vec![Rational::zero(); 8];
        d[0] = Rational::one();
        d[1] = -Rational::one();
        assert_eq!(h, Operator::diagonal(&d).unwrap());
        let a = Operator::cartan_generator(2);
        let b = Operator::cartan_generator(5);
        assert!(a.bracket(&b).is_zero());
        let diag: Vec<Rational> = (1..=8)
            .map(|k| Rational::from(k as i64) - q(9, 2))
            .collect();
        let dm = Operator::diagonal(&diag).unwrap();
        assert_eq!(
            dm.bracket(&Operator::unit(1, 2)),
            Operator::unit(1, 2).scale(&Rational::from(-1))
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Operator::new(Matrix::identity(8)).is_err());
        assert!(Operator::new(Matrix::zeros(7, 7)).is_err());
    }
}
