//! Cyclic Jacobi eigendecomposition for small dense symmetric matrices.
//!
//! Matrices here are at most 20×20, so plane rotations beat any heavier
//! factorization and keep the crate free of linear-algebra dependencies.

use crate::error::{Error, Result};
use crate::scalar::{tolerance, Real};

/// Off-diagonal norm target, relative to the Frobenius norm of the input.
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-12;

/// Sweep budget before giving up.
const MAX_SWEEPS: usize = 100;

/// Diagonalizes a symmetric matrix (row-major, `n × n`) by cyclic Jacobi
/// rotations. Returns the eigenvalues and, per eigenvalue, its unit
/// eigenvector, in no particular order.
pub(crate) fn eigen_symmetric<T: Real>(matrix: &[T], n: usize) -> Result<(Vec<T>, Vec<Vec<T>>)> {
    debug_assert_eq!(matrix.len(), n * n);
    let mut a = matrix.to_vec();
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }

    let scale = frobenius(&a);
    if scale > T::zero() {
        let threshold = tolerance::<T>(OFF_DIAGONAL_TOLERANCE) * scale;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a, n) <= threshold {
                converged = true;
                break;
            }
            for p in 0..n - 1 {
                for q in p + 1..n {
                    rotate(&mut a, &mut v, n, p, q);
                }
            }
        }
        if !converged && off_diagonal_norm(&a, n) > threshold {
            return Err(Error::ConvergenceFailure);
        }
    }

    let eigenvalues: Vec<T> = (0..n).map(|i| a[i * n + i]).collect();
    let eigenvectors: Vec<Vec<T>> = (0..n)
        .map(|j| (0..n).map(|i| v[i * n + j]).collect())
        .collect();
    Ok((eigenvalues, eigenvectors))
}

fn frobenius<T: Real>(a: &[T]) -> T {
    a.iter().map(|&x| x * x).sum::<T>().sqrt()
}

fn off_diagonal_norm<T: Real>(a: &[T], n: usize) -> T {
    let mut total = T::zero();
    for p in 0..n {
        for q in 0..n {
            if p != q {
                total += a[p * n + q] * a[p * n + q];
            }
        }
    }
    total.sqrt()
}

/// One plane rotation annihilating `a[p][q]`, accumulated into `v`.
fn rotate<T: Real>(a: &mut [T], v: &mut [T], n: usize, p: usize, q: usize) {
    let apq = a[p * n + q];
    if apq == T::zero() {
        return;
    }
    let app = a[p * n + p];
    let aqq = a[q * n + q];
    let two = T::one() + T::one();
    let theta = (aqq - app) / (two * apq);
    let t = if theta >= T::zero() {
        T::one() / (theta + (theta * theta + T::one()).sqrt())
    } else {
        -T::one() / (-theta + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    a[p * n + p] = c * c * app - two * s * c * apq + s * s * aqq;
    a[q * n + q] = s * s * app + two * s * c * apq + c * c * aqq;
    a[p * n + q] = T::zero();
    a[q * n + p] = T::zero();
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let akp = a[k * n + p];
        let akq = a[k * n + q];
        a[k * n + p] = c * akp - s * akq;
        a[p * n + k] = a[k * n + p];
        a[k * n + q] = s * akp + c * akq;
        a[q * n + k] = a[k * n + q];
    }
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = c * vkp - s * vkq;
        v[k * n + q] = s * vkp + c * vkq;
    }
}
