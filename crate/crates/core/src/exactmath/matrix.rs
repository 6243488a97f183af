use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{usage, Result};

/// Dense row-major matrix over ℚ.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Solution of `A x = b`: one particular solution and a basis of `ker A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    pub particular: Vec<Rational>,
    pub kernel: Vec<Vec<Rational>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return usage("ragged rows in matrix literal");
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds a matrix from integer rows. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
            .collect();
        Matrix::from_rows(v).expect("ragged integer matrix")
    }

    pub fn from_columns(cols: &[Vec<Rational>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|col| col.len() != r) {
            return usage("ragged columns in matrix literal");
        }
        let mut m = Matrix::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|x| !x.is_zero()).count()
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| &self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Matrix, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return usage(format!(
                "shape mismatch {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    /// Matrix product, skipping zero entries of the left factor.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return usage(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            ));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return usage(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            ));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return usage("column count mismatch in vstack");
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols,
            data,
        })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        echelon_rank(self.to_rows(), self.cols)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (rows, pivots) = rref_rows(self.to_rows(), self.cols);
        kernel_from_rref(&rows, &pivots, self.cols)
    }

    /// Solves `A x = b`. Returns `None` when the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Result<Option<LinearSolution>> {
        if b.len() != self.rows {
            return usage(format!(
                "right-hand side of length {} for a {}x{} system",
                b.len(),
                self.rows,
                self.cols
            ));
        }
        let n = self.cols;
        let aug: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.push(b[i].clone());
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, n);
        for row in rows.iter().skip(pivots.len()) {
            if !row[n].is_zero() {
                return Ok(None);
            }
        }
        let mut x = vec![Rational::zero(); n];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][n].clone();
        }
        let trimmed: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|mut r| {
                r.truncate(n);
                r
            })
            .collect();
        let kernel = kernel_from_rref(&trimmed, &pivots, n);
        Ok(Some(LinearSolution {
            particular: x,
            kernel,
        }))
    }

    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return usage("inverse of a non-square matrix");
        }
        let n = self.rows;
        let aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row = self.row(i).to_vec();
                row.extend((0..n).map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }));
                row
            })
            .collect();
        let (rows, pivots) = rref_rows(aug, n);
        if pivots.len() < n {
            return Ok(None);
        }
        let mut inv = Matrix::zeros(n, n);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().skip(n).enumerate() {
                inv[(i, j)] = x;
            }
        }
        Ok(Some(inv))
    }

    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return usage("determinant of a non-square matrix");
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = pick_pivot(&a, c, c) else {
                return Ok(Rational::zero());
            };
            if p != c {
                a.swap(p, c);
                det = -det;
            }
            let piv = a[c][c].clone();
            det *= &piv;
            let inv = piv.recip();
            let support: Vec<usize> = (c + 1..n).filter(|&j| !a[c][j].is_zero()).collect();
            for r in c + 1..n {
                if a[r][c].is_zero() {
                    continue;
                }
                let f = &a[r][c] * &inv;
                for &j in &support {
                    let t = &f * &a[c][j];
                    a[r][j] -= t;
                }
                a[r][c] = Rational::zero();
            }
        }
        Ok(det)
    }

    /// Characteristic polynomial det(tI − A) via reduction to Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly> {
        if !self.is_square() {
            return usage("characteristic polynomial of a non-square matrix");
        }
        let n = self.rows;
        let mut h = self.to_rows();
        // Similarity transforms to upper Hessenberg form.
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
                continue;
            };
            if i != m {
                h.swap(i, m);
                for row in h.iter_mut() {
                    row.swap(i, m);
                }
            }
            let inv = h[m][m - 1].recip();
            for i in m + 1..n {
                if h[i][m - 1].is_zero() {
                    continue;
                }
                let u = &h[i][m - 1] * &inv;
                let (upper, lower) = h.split_at_mut(i);
                for (x, p) in lower[0].iter_mut().zip(&upper[m]) {
                    if !p.is_zero() {
                        *x -= &u * p;
                    }
                }
                for row in h.iter_mut() {
                    if !row[i].is_zero() {
                        let t = &u * &row[i];
                        row[m] += t;
                    }
                }
            }
        }
        // Recurrence on leading principal submatrices.
        let mut p: Vec<Poly> = vec![Poly::one()];
        for m in 1..=n {
            let mut next = Poly::linear(-h[m - 1][m - 1].clone()).mul(&p[m - 1]);
            let mut t = Rational::one();
            for i in 1..m {
                t *= &h[m - i][m - i - 1];
                let coeff = &t * &h[m - i - 1][m - 1];
                if !coeff.is_zero() {
                    next = next.sub(&p[m - i - 1].scale(&coeff));
                }
            }
            p.push(next);
        }
        Ok(p.pop().expect("nonempty recurrence"))
    }

    /// Sparse view: for each row, the nonzero `(column, value)` pairs.
    pub fn to_sparse(&self) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(j, x)| (j, x.clone()))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Row-compressed matrix used for repeated matrix-vector products.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<(usize, Rational)>>,
}

impl SparseMatrix {
    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        debug_assert_eq!(v.len(), self.cols);
        self.entries
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !v[*j].is_zero())
                    .map(|(j, a)| a * &v[*j])
                    .sum()
            })
            .collect()
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        fmt::Display::fmt(self, f)
    }
}

/// Row with a nonzero entry in column `c` at or below `start`, preferring small entries.
fn pick_pivot(a: &[Vec<Rational>], c: usize, start: usize) -> Option<usize> {
    (start..a.len())
        .filter(|&r| !a[r][c].is_zero())
        .min_by_key(|&r| a[r][c].bit_size())
}

/// Gauss–Jordan elimination pivoting only among the first `pivot_cols` columns.
pub(crate) fn rref_rows(
    mut a: Vec<Vec<Rational>>,
    pivot_cols: usize,
) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == nrows {
            break;
        }
        let Some(p) = pick_pivot(&a, c, r) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        if !inv.is_one() {
            for x in a[r].iter_mut().filter(|x| !x.is_zero()) {
                *x *= &inv;
            }
        }
        let support: Vec<usize> = (0..a[r].len()).filter(|&j| !a[r][j].is_zero()).collect();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Rank by forward elimination only.
pub(crate) fn echelon_rank(mut a: Vec<Vec<Rational>>, cols: usize) -> usize {
    let nrows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = pick_pivot(&a, c, r) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        let support: Vec<usize> = (c + 1..cols).filter(|&j| !a[r][j].is_zero()).collect();
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let f = &row[c] * &inv;
            for &j in &support {
                let t = &f * &pivot_row[j];
                row[j] -= t;
            }
            row[c] = Rational::zero();
        }
        r += 1;
    }
    r
}

fn kernel_from_rref(rows: &[Vec<Rational>], pivots: &[usize], n: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; n];
    for &p in pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                if !rows[r][f].is_zero() {
                    v[p] = -rows[r][f].clone();
                }
            }
            v
        })
        .collect()
}

/// Incrementally maintained echelon basis of a subspace of ℚⁿ.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, mut v: Vec<Rational>) -> Vec<Rational> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    v[j] -= &f * x;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v.to_vec()).iter().all(Rational::is_zero)
    }

    /// Adds `v` to the span. Returns true if the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> bool {
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((p, r));
        true
    }
}
