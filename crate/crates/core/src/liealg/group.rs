use rand::Rng;

use super::fourvector::FourVector;
use super::index4::Index4;
use super::operator::Operator;
use crate::error::{usage, Result};
use crate::exactmath::{Matrix, Rational};

fn minor4(g: &Matrix, rows: [u8; 4], cols: [u8; 4]) -> Rational {
    let m = Matrix::from_rows(
        rows.iter()
            .map(|&r| {
                cols.iter()
                    .map(|&c| g[(r as usize - 1, c as usize - 1)].clone())
                    .collect()
            })
            .collect(),
    )
    .expect("4x4");
    m.det().expect("square")
}

/// `g·T` for `g` in GL₈ acting on ∧⁴ by `e_S ↦ Σ_T det g[T, S] e_T`.
pub fn wedge4_action(g: &Matrix, t: &FourVector) -> Result<FourVector> {
    if g.rows() != 8 || g.cols() != 8 {
        return usage("group elements must be 8x8");
    }
    let mut out = FourVector::zero();
    for (s, c) in t.terms() {
        for &target in Index4::all() {
            let m = minor4(g, target.indices(), s.indices());
            if !m.is_zero() {
                out.add_term(target, &(&m * c));
            }
        }
    }
    Ok(out)
}

/// `g X g⁻¹`.
pub fn conjugate_operator(g: &Matrix, x: &Operator) -> Result<Operator> {
    let inv = g
        .inverse()?
        .ok_or_else(|| crate::Error::Usage("group element is singular".into()))?;
    Operator::new(g.mul(x.matrix())?.mul(&inv)?)
}

/// Product of `steps` random integer elementary matrices, a unimodular element of SL₈(ℤ).
pub fn random_unimodular<R: Rng>(rng: &mut R, steps: usize) -> Matrix {
    let mut g = Matrix::identity(8);
    for _ in 0..steps {
        let i = rng.gen_range(0..8);
        let mut j = rng.gen_range(0..7);
        if j >= i {
            j += 1;
        }
        let k = Rational::from(
            *[-2i64, -1, 1, 2]
                .get(rng.gen_range(0..4))
                .expect("in range"),
        );
        for c in 0..8 {
            let add = &g[(j, c)] * &k;
            g[(i, c)] = &g[(i, c)] + &add;
        }
    }
    g
}
