//! Lawson–Hanson active-set solver for nonnegative least squares.

use super::matrix::{norm2, Matrix};
use super::solve::least_squares;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NnlsResult {
    /// Minimizer of `‖A·x − b‖₂` over `x ≥ 0`; every entry is `≥ 0`.
    pub solution: Vec<f64>,
    pub residual_norm: f64,
    pub iterations: usize,
}

/// Solves `min ‖A·x − b‖₂ subject to x ≥ 0`.
///
/// `tol` is the optimality threshold on the dual vector `w = Aᵀ(b − A·x)`
/// and the positivity threshold for passive coefficients. The entering
/// index is the lowest one whose `w` is within `tol` of the maximum, which
/// makes the result reproducible when several columns tie.
pub fn nnls(a: &Matrix, b: &[f64], tol: f64) -> Result<NnlsResult> {
    let (m, n) = a.shape();
    if b.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "nnls right-hand side has length {}, expected {m}",
            b.len()
        )));
    }
    let max_iter = 3 * n + 30;
    let ls_tol = 1e-13;

    let mut x = vec![0.0; n];
    let mut passive = vec![false; n];
    // Columns rejected after a degenerate entering step; cleared once the
    // iterate moves.
    let mut blocked = vec![false; n];
    let mut iterations = 0;

    let mut resid: Vec<f64> = b.to_vec();
    let mut w = a.tr_mul_vec(&resid)?;

    loop {
        let wmax = (0..n)
            .filter(|&j| !passive[j] && !blocked[j])
            .map(|j| w[j])
            .fold(f64::NEG_INFINITY, f64::max);
        if wmax.is_nan() || wmax <= tol {
            break;
        }
        let t = (0..n)
            .find(|&j| !passive[j] && !blocked[j] && w[j] >= wmax - tol)
            .expect("maximum is attained");
        passive[t] = true;

        let mut first_inner = true;
        loop {
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::NonConvergence {
                    solver: "nnls",
                    iterations: max_iter,
                });
            }
            let z = passive_solve(a, b, &passive, ls_tol)?;
            if (0..n).filter(|&j| passive[j]).all(|j| z[j] > tol) {
                x = z;
                break;
            }
            if first_inner && z[t] <= tol {
                // The entering column does not improve the fit; leave x as is.
                passive[t] = false;
                blocked[t] = true;
                break;
            }
            first_inner = false;
            let mut alpha = f64::INFINITY;
            for j in (0..n).filter(|&j| passive[j] && z[j] <= tol) {
                let denom = x[j] - z[j];
                if denom > 0.0 {
                    alpha = alpha.min(x[j] / denom);
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for j in 0..n {
                x[j] += alpha * (z[j] - x[j]);
            }
            for j in 0..n {
                if passive[j] && x[j] <= tol {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }

        if !blocked[t] {
            blocked.iter_mut().for_each(|v| *v = false);
        }
        let ax = a.mul_vec(&x)?;
        for ((r, bi), axi) in resid.iter_mut().zip(b).zip(&ax) {
            *r = bi - axi;
        }
        w = a.tr_mul_vec(&resid)?;
    }

    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let ax = a.mul_vec(&x)?;
    let residual_norm = norm2(&ax.iter().zip(b).map(|(p, q)| p - q).collect::<Vec<_>>());
    Ok(NnlsResult {
        solution: x,
        residual_norm,
        iterations,
    })
}

/// Unconstrained least squares on the passive columns, zero elsewhere.
fn passive_solve(a: &Matrix, b: &[f64], passive: &[bool], tol: f64) -> Result<Vec<f64>> {
    let idx: Vec<usize> = (0..passive.len()).filter(|&j| passive[j]).collect();
    let mut z = vec![0.0; passive.len()];
    if idx.is_empty() {
        return Ok(z);
    }
    let sub = Matrix::from_columns(&idx.iter().map(|&j| a.column(j)).collect::<Vec<_>>())?;
    let zs = least_squares(&sub, b, tol)?;
    for (&j, v) in idx.iter().zip(zs) {
        z[j] = v;
    }
    Ok(z)
}
