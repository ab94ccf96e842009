//! Exact dense linear algebra: Gauss-Jordan over a field and fraction-free
//! (Bareiss) elimination over parameter polynomials.

use crate::polyops::CoefPoly;
use crate::scalar::Scalar;

pub type Matrix<T> = Vec<Vec<T>>;

/// Solves `a · x = b` column by column. `None` when `a` is singular.
pub fn solve<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Option<Matrix<S>> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut aug: Matrix<S> = a.iter().zip(b).map(|(ra, rb)| ra.iter().chain(rb.iter()).cloned().collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let p = aug[col][col].clone();
        for v in aug[col].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..n + m].to_vec()).collect())
}

pub fn identity<S: Scalar>(n: usize) -> Matrix<S> {
    (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
}

pub fn inverse<S: Scalar>(a: &Matrix<S>) -> Option<Matrix<S>> {
    solve(a, &identity(a.len()))
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_det<S: Scalar>(a: &Matrix<CoefPoly<S>>) -> CoefPoly<S> {
    let n = a.len();
    if n == 0 {
        return CoefPoly::one();
    }
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = CoefPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return CoefPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss step divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Adjugate and determinant, so that `a⁻¹ = adj / det` whenever `det ≠ 0`.
pub fn adjugate<S: Scalar>(a: &Matrix<CoefPoly<S>>) -> (Matrix<CoefPoly<S>>, CoefPoly<S>) {
    let n = a.len();
    let det = bareiss_det(a);
    if n == 1 {
        return (vec![vec![CoefPoly::one()]], det);
    }
    let mut adj = vec![vec![CoefPoly::zero(); n]; n];
    for (i, row) in adj.iter_mut().enumerate() {
        for (j, slot) in row.iter_mut().enumerate() {
            // cofactor of a[j][i]
            let minor: Matrix<CoefPoly<S>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c].clone()).collect())
                .collect();
            let d = bareiss_det(&minor);
            *slot = if (i + j) % 2 == 1 { -d } else { d };
        }
    }
    (adj, det)
}
