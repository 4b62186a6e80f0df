//! Direct dense solvers: LU with partial pivoting for square systems and
//! Householder QR for least squares.

use super::matrix::{norm2, Matrix};
use crate::error::{Error, Result};

/// Solves `A · X = B` for square `A`. A pivot at most `tol · max|A|`
/// in magnitude is reported as [`Error::Singular`].
pub fn solve(a: &Matrix, b: &Matrix, tol: f64) -> Result<Matrix> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "solve needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.rows() != n {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has {} rows, expected {n}",
            b.rows()
        )));
    }
    let thresh = tol * a.max_abs();
    let mut lu = a.clone();
    let mut x = b.clone();
    let nrhs = b.cols();

    for c in 0..n {
        let mut p = c;
        for i in c + 1..n {
            if lu[(i, c)].abs() > lu[(p, c)].abs() {
                p = i;
            }
        }
        let piv = lu[(p, c)];
        if piv.abs() <= thresh || piv == 0.0 {
            return Err(Error::Singular);
        }
        lu.swap_rows(p, c);
        x.swap_rows(p, c);
        for i in c + 1..n {
            let f = lu[(i, c)] / piv;
            if f == 0.0 {
                continue;
            }
            for j in c..n {
                lu[(i, j)] -= f * lu[(c, j)];
            }
            for j in 0..nrhs {
                x[(i, j)] -= f * x[(c, j)];
            }
        }
    }
    for c in (0..n).rev() {
        for j in 0..nrhs {
            let mut s = x[(c, j)];
            for l in c + 1..n {
                s -= lu[(c, l)] * x[(l, j)];
            }
            x[(c, j)] = s / lu[(c, c)];
        }
    }
    Ok(x)
}

/// Solves `A · x = b` for a single right-hand side.
pub fn solve_vec(a: &Matrix, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    let rhs = Matrix::new(b.len(), 1, b.to_vec())?;
    Ok(solve(a, &rhs, tol)?.into_data())
}

/// Minimum-residual solution of `A · x ≈ b` by Householder QR.
///
/// Columns that are numerically dependent on earlier ones (|Rⱼⱼ| at most
/// `tol · max|A|`) receive a zero coefficient.
pub fn least_squares(a: &Matrix, b: &[f64], tol: f64) -> Result<Vec<f64>> {
    let (m, n) = a.shape();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has length {}, expected {m}",
            b.len()
        )));
    }
    let thresh = tol * a.max_abs();
    let mut r = a.clone();
    let mut qtb = b.to_vec();
    let steps = n.min(m);
    let mut v = vec![0.0; m];

    for c in 0..steps {
        let col_norm = norm2(&(c..m).map(|i| r[(i, c)]).collect::<Vec<_>>());
        if col_norm <= thresh {
            continue;
        }
        let alpha = if r[(c, c)] > 0.0 { -col_norm } else { col_norm };
        for i in c..m {
            v[i] = r[(i, c)];
        }
        v[c] -= alpha;
        let vnorm2: f64 = (c..m).map(|i| v[i] * v[i]).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for j in c..n {
            let s: f64 = (c..m).map(|i| v[i] * r[(i, j)]).sum::<f64>() * 2.0 / vnorm2;
            for i in c..m {
                r[(i, j)] -= s * v[i];
            }
        }
        let s: f64 = (c..m).map(|i| v[i] * qtb[i]).sum::<f64>() * 2.0 / vnorm2;
        for i in c..m {
            qtb[i] -= s * v[i];
        }
    }

    let mut x = vec![0.0; n];
    for c in (0..steps).rev() {
        let d = r[(c, c)];
        if d.abs() <= thresh || d == 0.0 {
            continue;
        }
        let mut s = qtb[c];
        for l in c + 1..steps {
            s -= r[(c, l)] * x[l];
        }
        x[c] = s / d;
    }
    Ok(x)
}

/// Euclidean norm of `A · x − b`.
pub fn residual_norm(a: &Matrix, x: &[f64], b: &[f64]) -> Result<f64> {
    let ax = a.mul_vec(x)?;
    Ok(norm2(
        &ax.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>(),
    ))
}
