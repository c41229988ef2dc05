//! Principal eigenpair of positive matrices by power iteration, and the
//! eigenvalue-based consistency index.
//!
//! Positive matrices have a simple, dominant principal eigenvalue with a
//! positive eigenvector (Perron), so plain power iteration is the right
//! tool: no shifts, no deflation, no complex arithmetic. Because the
//! eigenvalue estimate is perturbation-sensitive in the inconsistent
//! regime, results carry their iteration count and residual so callers can
//! judge convergence instead of trusting it.

use crate::error::{PcError, Result};
use crate::matrix::{PcMatrix, WeightVector};

/// Default stop tolerance: successive sum-to-one iterates within this in
/// max-norm.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;

pub const DEFAULT_EIGEN_MAX_ITERS: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub lambda_max: f64,
    /// Sum-to-one principal eigenvector.
    pub vector: WeightVector,
    /// Matrix-vector multiplications performed.
    pub iterations: usize,
    /// Max-norm of `M*v - lambda_max*v` at the returned vector.
    pub residual: f64,
}

/// Power iteration with default tolerance and iteration cap.
pub fn principal_eigenpair(matrix: &PcMatrix) -> Result<EigenResult> {
    principal_eigenpair_with(matrix, DEFAULT_EIGEN_TOL, DEFAULT_EIGEN_MAX_ITERS)
}

/// Power iteration from the uniform vector. Each iterate is normalized to
/// sum one; iteration stops when successive iterates agree within `tol` in
/// max-norm. The eigenvalue is the mean of the componentwise ratios
/// `(M*v)_i / v_i` at the final vector.
pub fn principal_eigenpair_with(
    matrix: &PcMatrix,
    tol: f64,
    max_iters: usize,
) -> Result<EigenResult> {
    let n = matrix.n();
    let mut v = vec![1.0 / n as f64; n];
    let mut iterations = 0;
    loop {
        iterations += 1;
        let w = mat_vec(matrix, &v);
        let sum: f64 = w.iter().sum();
        let next: Vec<f64> = w.iter().map(|x| x / sum).collect();
        let diff = v
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        v = next;
        if diff < tol {
            break;
        }
        if iterations >= max_iters {
            let (_, residual) = rayleigh(matrix, &v);
            return Err(PcError::EigenDidNotConverge {
                iterations,
                residual,
            });
        }
    }
    let (lambda_max, residual) = rayleigh(matrix, &v);
    Ok(EigenResult {
        lambda_max,
        vector: WeightVector::sum_to_one(v)?,
        iterations,
        residual,
    })
}

fn mat_vec(matrix: &PcMatrix, v: &[f64]) -> Vec<f64> {
    let n = matrix.n();
    (0..n)
        .map(|i| (0..n).map(|j| matrix.get(i, j) * v[j]).sum())
        .collect()
}

fn rayleigh(matrix: &PcMatrix, v: &[f64]) -> (f64, f64) {
    let w = mat_vec(matrix, v);
    let n = v.len() as f64;
    let lambda: f64 = w.iter().zip(v).map(|(wi, vi)| wi / vi).sum::<f64>() / n;
    let residual = w
        .iter()
        .zip(v)
        .map(|(wi, vi)| (wi - lambda * vi).abs())
        .fold(0.0, f64::max);
    (lambda, residual)
}

/// Saaty's consistency index `(lambda_max - n) / (n - 1)`: zero on
/// consistent matrices, and non-negative whenever the input is reciprocal
/// (for which `lambda_max >= n` always holds).
pub fn saaty_ci(matrix: &PcMatrix) -> Result<f64> {
    let eigen = principal_eigenpair(matrix)?;
    let n = matrix.n() as f64;
    Ok((eigen.lambda_max - n) / (n - 1.0))
}

/// Principal eigenvalue of the reciprocal 3x3 matrix
/// `[[1, a, b], [1/a, 1, c], [1/b, 1/c, 1]]` in closed form:
///
/// ```text
/// lambda = 1 + cbrt(a*c/b) + cbrt(b/(a*c))
/// ```
///
/// The geometric-means vector of such a matrix satisfies
/// `M * gm = lambda * gm` exactly, so at n = 3 (and only there, see the
/// 4x4 tests) the geometric-means and eigenvector weights coincide.
pub fn lambda_3x3(a: f64, b: f64, c: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0 && c > 0.0) {
        return Err(PcError::NonPositiveTriad { x: a, y: b, z: c });
    }
    Ok(1.0 + (a * c / b).cbrt() + (b / (a * c)).cbrt())
}
