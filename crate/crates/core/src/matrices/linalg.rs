// Copyright 2026 The lagssm Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense helpers: inversion with a condition guard, the bilinear transform,
//! the relative Frobenius difference and block-diagonal composition.

use nalgebra::{DMatrix, DVector};

use crate::error::{argument, numeric, Result};

/// Maximum absolute column sum.
pub fn norm1(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn check_square(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if !m.is_square() {
        return Err(argument(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}

/// Inverse via LU with partial pivoting, plus the 1-norm condition number
/// `||A||_1 ||A^-1||_1`.
pub fn invert_with_condition(a: &DMatrix<f64>) -> Result<(DMatrix<f64>, f64)> {
    check_square(a, "matrix")?;
    if a.iter().any(|x| !x.is_finite()) {
        return Err(numeric("matrix has non-finite entries"));
    }
    let inv = a
        .clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| numeric("matrix is singular"))?;
    if inv.iter().any(|x| !x.is_finite()) {
        return Err(numeric("inverse has non-finite entries"));
    }
    let cond = norm1(a) * norm1(&inv);
    Ok((inv, cond))
}

/// Solves `a x = b` for a matrix right-hand side.
pub(crate) fn solve(a: &DMatrix<f64>, b: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let x = a
        .clone()
        .lu()
        .solve(b)
        .ok_or_else(|| numeric("linear system is singular"))?;
    if x.iter().any(|v| !v.is_finite()) {
        return Err(numeric("linear solve produced non-finite entries"));
    }
    Ok(x)
}

/// Tustin transform `(I - d/2 A)^-1 (I + d/2 A)` and `(I - d/2 A)^-1 d B`.
pub fn bilinear_discretize(a: &DMatrix<f64>, b: &DVector<f64>, delta: f64) -> Result<(DMatrix<f64>, DVector<f64>)> {
    check_square(a, "state matrix")?;
    if b.len() != a.nrows() {
        return Err(argument(format!(
            "input vector length {} does not match state size {}",
            b.len(),
            a.nrows()
        )));
    }
    if !(delta.is_finite() && delta > 0.0) {
        return Err(argument(format!("step must be positive, got {delta}")));
    }
    let n = a.nrows();
    let eye = DMatrix::<f64>::identity(n, n);
    let half = 0.5 * delta;
    let lhs = &eye - a * half;
    let rhs_a = &eye + a * half;
    let mut rhs = DMatrix::<f64>::zeros(n, n + 1);
    rhs.columns_mut(0, n).copy_from(&rhs_a);
    rhs.column_mut(n).copy_from(&(b * delta));
    let sol = solve(&lhs, &rhs)?;
    let a_bar = sol.columns(0, n).into_owned();
    let b_bar = sol.column(n).into_owned();
    Ok((a_bar, b_bar))
}

/// `||m1 - m2||_F / ||m1||_F`.
pub fn frobenius_rel_diff(m1: &DMatrix<f64>, m2: &DMatrix<f64>) -> Result<f64> {
    if m1.shape() != m2.shape() {
        return Err(argument(format!(
            "shape mismatch: {:?} vs {:?}",
            m1.shape(),
            m2.shape()
        )));
    }
    let denom = m1.norm();
    if denom == 0.0 {
        return Err(argument("reference matrix has zero Frobenius norm"));
    }
    Ok((m1 - m2).norm() / denom)
}

/// Stacks square transitions on the diagonal and concatenates the input
/// vectors, so every block evolves independently on a shared input.
pub fn compose_block_diagonal(blocks: &[(DMatrix<f64>, DVector<f64>)]) -> Result<(DMatrix<f64>, DVector<f64>)> {
    if blocks.is_empty() {
        return Err(argument("at least one block is required"));
    }
    for (i, (a, b)) in blocks.iter().enumerate() {
        if !a.is_square() || a.nrows() != b.len() {
            return Err(argument(format!(
                "block {i}: transition {}x{} does not match input length {}",
                a.nrows(),
                a.ncols(),
                b.len()
            )));
        }
    }
    let total: usize = blocks.iter().map(|(_, b)| b.len()).sum();
    let mut a_out = DMatrix::<f64>::zeros(total, total);
    let mut b_out = DVector::<f64>::zeros(total);
    let mut offset = 0;
    for (a, b) in blocks {
        let n = b.len();
        a_out.view_mut((offset, offset), (n, n)).copy_from(a);
        b_out.rows_mut(offset, n).copy_from(b);
        offset += n;
    }
    Ok((a_out, b_out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rel_diff_cases() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(frobenius_rel_diff(&m, &m).unwrap(), 0.0);
        let eye = DMatrix::<f64>::identity(2, 2);
        assert_eq!(frobenius_rel_diff(&eye, &DMatrix::zeros(2, 2)).unwrap(), 1.0);
        let two = DMatrix::from_element(1, 1, 2.0);
        let one = DMatrix::from_element(1, 1, 1.0);
        assert_eq!(frobenius_rel_diff(&two, &one).unwrap(), 0.5);
        assert!(frobenius_rel_diff(&eye, &DMatrix::zeros(3, 3)).is_err());
        assert!(frobenius_rel_diff(&DMatrix::zeros(2, 2), &eye).is_err());
    }

    #[test]
    fn bilinear_cases() {
        let b = DVector::from_vec(vec![1.0, -2.0, 0.5]);
        let (a_bar, b_bar) = bilinear_discretize(&DMatrix::zeros(3, 3), &b, 0.1).unwrap();
        assert_eq!(a_bar, DMatrix::identity(3, 3));
        for i in 0..3 {
            assert!((b_bar[i] - 0.1 * b[i]).abs() < 1e-16);
        }
        let a = DMatrix::from_element(1, 1, -1.0);
        let (a_bar, b_bar) = bilinear_discretize(&a, &DVector::from_element(1, 1.0), 0.01).unwrap();
        assert!((a_bar[(0, 0)] - 0.995 / 1.005).abs() < 1e-15);
        assert!((a_bar[(0, 0)] - 0.990_049_8).abs() < 1e-7);
        assert!((b_bar[0] - 0.01 / 1.005).abs() < 1e-16);
        // I - d/2 A singular at A = 2/d
        let sing = DMatrix::from_element(1, 1, 200.0);
        assert!(bilinear_discretize(&sing, &DVector::from_element(1, 1.0), 0.01).is_err());
    }

    #[test]
    fn inverse_and_condition() {
        let a = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 0.0, 4.0]);
        let (inv, cond) = invert_with_condition(&a).unwrap();
        assert!(((&a * &inv) - DMatrix::identity(2, 2)).norm() < 1e-15);
        // ||A||_1 = 5, ||A^-1||_1 = max(0.5, 0.125 + 0.25) = 0.5
        assert!((cond - 2.5).abs() < 1e-15);
        assert!(invert_with_condition(&DMatrix::zeros(2, 2)).is_err());
    }

    #[test]
    fn block_composition() {
        let a = DMatrix::from_element(2, 2, 0.5);
        let b = DVector::from_element(2, 1.0);
        let (a1, b1) = compose_block_diagonal(&[(a.clone(), b.clone())]).unwrap();
        assert_eq!((a1, b1), (a.clone(), b.clone()));

        let (ab, bb) = compose_block_diagonal(&[
            (DMatrix::from_element(1, 1, 0.3), DVector::from_element(1, 1.5)),
            (DMatrix::from_element(1, 1, 0.7), DVector::from_element(1, -2.0)),
        ])
        .unwrap();
        assert_eq!(ab, DMatrix::from_row_slice(2, 2, &[0.3, 0.0, 0.0, 0.7]));
        assert_eq!(bb, DVector::from_vec(vec![1.5, -2.0]));

        assert!(compose_block_diagonal(&[]).is_err());
        assert!(compose_block_diagonal(&[(a, DVector::from_element(3, 1.0))]).is_err());
    }
}
