use super::matrix::Matrix;
use super::nnls::nnls;
use super::NNLS_TOL;
use crate::error::{Error, Result};

/// Whether `points[idx]` is a vertex of the convex hull of `points`.
///
/// The point is a vertex iff it is not a convex combination of the other
/// points, i.e. iff the nonnegative least-squares fit
/// `[others; 1ᵀ] · λ ≈ [p; 1]` leaves a residual above `tol`.
/// Works in any ambient dimension, including degenerate affine hulls.
pub fn is_vertex(points: &[Vec<f64>], idx: usize, tol: f64) -> Result<bool> {
    let Some(target) = points.get(idx) else {
        return Err(Error::DimensionMismatch(format!(
            "point index {idx} out of range for {} points",
            points.len()
        )));
    };
    let dim = target.len();
    if let Some(bad) = points.iter().position(|p| p.len() != dim) {
        return Err(Error::DimensionMismatch(format!(
            "point {bad} has dimension {}, expected {dim}",
            points[bad].len()
        )));
    }
    if points.len() == 1 {
        return Ok(true);
    }
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(points.len() - 1);
    for (i, p) in points.iter().enumerate() {
        if i != idx {
            let mut c = p.clone();
            c.push(1.0);
            columns.push(c);
        }
    }
    let a = Matrix::from_columns(&columns)?;
    let mut b = target.clone();
    b.push(1.0);
    let fit = nnls(&a, &b, NNLS_TOL)?;
    Ok(fit.residual_norm > tol)
}
