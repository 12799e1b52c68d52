//! Dense linear algebra for the tiny (n ≤ 3) systems that appear in the
//! boundary-mean equations and noise factorization.
//!
//! Matrices are row-major `&[f64]` slices of length `n * n`. Everything here
//! is direct: partial-pivoted elimination for solves and inverses, a
//! `Cholesky` factorization for symmetric positive definite checks, and a
//! one-norm condition estimate obtained from the explicit inverse.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is singular (zero pivot at column {col})")]
    Singular { col: usize },
    #[error("matrix is not positive definite (pivot {pivot:.3e} at row {row})")]
    NotPositiveDefinite { row: usize, pivot: f64 },
}

/// Solve `a x = b` by Gaussian elimination with partial pivoting.
pub fn solve(n: usize, a: &[f64], b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n);
    let mut m = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| m[r * n + col].abs().total_cmp(&m[s * n + col].abs()))
            .unwrap();
        if m[pivot_row * n + col] == 0.0 {
            return Err(LinalgError::Singular { col });
        }
        if pivot_row != col {
            for k in 0..n {
                m.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        let pivot = m[col * n + col];
        for row in col + 1..n {
            let factor = m[row * n + col] / pivot;
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                m[row * n + k] -= factor * m[col * n + k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    // Back substitution.
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row * n + k] * x[k];
        }
        x[row] = acc / m[row * n + row];
    }
    Ok(x)
}

/// Explicit inverse via column-by-column solves.
pub fn inverse(n: usize, a: &[f64]) -> Result<Vec<f64>, LinalgError> {
    let mut inv = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for col in 0..n {
        e.fill(0.0);
        e[col] = 1.0;
        let x = solve(n, a, &e)?;
        for row in 0..n {
            inv[row * n + col] = x[row];
        }
    }
    Ok(inv)
}

/// Induced one-norm (maximum absolute column sum).
pub fn one_norm(n: usize, a: &[f64]) -> f64 {
    (0..n)
        .map(|col| (0..n).map(|row| a[row * n + col].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// One-norm condition number `‖A‖₁ ‖A⁻¹‖₁`; `None` when `A` is exactly
/// singular.
pub fn condition_one_norm(n: usize, a: &[f64]) -> Option<f64> {
    let inv = inverse(n, a).ok()?;
    Some(one_norm(n, a) * one_norm(n, &inv))
}

/// Lower-triangular Cholesky factor `L` with `L Lᵀ = A`.
///
/// The input is read as symmetric (only the lower triangle is referenced).
/// Failure of any pivot to stay strictly positive rejects the matrix, which
/// is exactly the positive-definiteness test used for noise covariances.
pub fn cholesky_lower(n: usize, a: &[f64]) -> Result<Vec<f64>, LinalgError> {
    assert_eq!(a.len(), n * n);
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut acc = a[i * n + j];
            for k in 0..j {
                acc -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if acc <= 0.0 {
                    return Err(LinalgError::NotPositiveDefinite { row: i, pivot: acc });
                }
                l[i * n + j] = acc.sqrt();
            } else {
                l[i * n + j] = acc / l[j * n + j];
            }
        }
    }
    Ok(l)
}

/// `y = A x` for a row-major square matrix.
pub fn mat_vec(n: usize, a: &[f64], x: &[f64], out: &mut [f64]) {
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        out[i] = row.iter().zip(x).map(|(aij, xj)| aij * xj).sum();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn solve_3x3_against_hand_solution() {
        // x + 2y + z = 8, 3x - y = 1, y + 4z = 14 has solution (1, 2, 3).
        let a = [1.0, 2.0, 1.0, 3.0, -1.0, 0.0, 0.0, 1.0, 4.0];
        let b = [8.0, 1.0, 14.0];
        let x = solve(3, &a, &b).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[1], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x[2], 3.0, epsilon = 1e-12);
    }

    #[test]
    fn solve_detects_singular() {
        let a = [-1.0, -1.0, -1.0, -1.0];
        assert!(matches!(
            solve(2, &a, &[1.0, 1.0]),
            Err(LinalgError::Singular { .. })
        ));
    }

    #[test]
    fn cholesky_matches_hand_factor() {
        let a = [1.0, 0.5, 0.5, 1.0];
        let l = cholesky_lower(2, &a).unwrap();
        assert_abs_diff_eq!(l[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l[2], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(l[3], 0.75f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = [1.0, 2.0, 2.0, 1.0]; // determinant -3
        assert!(matches!(
            cholesky_lower(2, &a),
            Err(LinalgError::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn condition_number_of_identity_is_one() {
        let a = [1.0, 0.0, 0.0, 1.0];
        assert_abs_diff_eq!(condition_one_norm(2, &a).unwrap(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn condition_number_of_singular_is_none() {
        let a = [1.0, 1.0, 1.0, 1.0];
        assert!(condition_one_norm(2, &a).is_none());
    }
}
