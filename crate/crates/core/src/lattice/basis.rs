use super::beta::BetaRange;
use super::payoff::PayoffCollection;
use crate::error::{Error, Result};
use crate::numerics::{least_squares, norm1, norm2, solve, Matrix, RESIDUAL_TOL};
use crate::options::Options;

/// A positive basis `b₁ … b_r` of a lattice-subspace of `R^k`.
///
/// A vector of the subspace is positive iff all of its coordinates in this
/// basis are nonnegative, so the lattice operations of the subspace act
/// coordinatewise.
#[derive(Debug, Clone, PartialEq)]
pub struct PositiveBasis {
    k: usize,
    basis: Vec<Vec<f64>>,
    /// Row `i` holds the coordinates of generator `i`: `xᵢ = Σₛ coeffs[i][s]·b_s`.
    coeffs: Matrix,
}

impl PositiveBasis {
    pub(crate) fn from_parts(basis: Vec<Vec<f64>>, coeffs: Matrix) -> Self {
        let k = basis.first().map(Vec::len).unwrap_or(0);
        Self { k, basis, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.basis
    }

    pub fn coeffs(&self) -> &Matrix {
        &self.coeffs
    }

    /// `r × k` matrix with the basis vectors as rows.
    pub fn to_row_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.basis).expect("basis is nonempty and rectangular")
    }

    /// Basis vectors scaled to unit 1-norm.
    pub fn normalized(&self) -> Vec<Vec<f64>> {
        self.basis
            .iter()
            .map(|b| {
                let s = norm1(b);
                b.iter().map(|v| v / s).collect()
            })
            .collect()
    }

    /// `Σ λᵢ bᵢ`.
    pub fn expand(&self, coords: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.k];
        for (l, b) in coords.iter().zip(&self.basis) {
            for (o, v) in out.iter_mut().zip(b) {
                *o += l * v;
            }
        }
        out
    }

    /// Coordinates of `x` in the basis, with the default residual tolerance.
    pub fn coords(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.coords_with_tol(x, RESIDUAL_TOL)
    }

    /// Coordinates of `x`; fails when the least-squares residual exceeds
    /// `tol · max(1, ‖x‖₂)`.
    pub fn coords_with_tol(&self, x: &[f64], tol: f64) -> Result<Vec<f64>> {
        if x.len() != self.k {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {}, basis lives in R^{}",
                x.len(),
                self.k
            )));
        }
        let a = Matrix::from_columns(&self.basis)?;
        let lambda = least_squares(&a, x, 1e-13)?;
        let back = self.expand(&lambda);
        let residual = norm2(&back.iter().zip(x).map(|(p, q)| p - q).collect::<Vec<_>>());
        if residual > tol * norm2(x).max(1.0) {
            return Err(Error::OutsideSpan { residual });
        }
        Ok(lambda)
    }

    /// Supremum of `x` and `y` inside the subspace: coordinatewise max.
    pub fn sup(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        self.combine(x, y, f64::max)
    }

    /// Infimum of `x` and `y` inside the subspace: coordinatewise min.
    pub fn inf(&self, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
        self.combine(x, y, f64::min)
    }

    fn combine(&self, x: &[f64], y: &[f64], op: fn(f64, f64) -> f64) -> Result<Vec<f64>> {
        let lx = self.coords(x)?;
        let ly = self.coords(y)?;
        let l: Vec<f64> = lx.iter().zip(&ly).map(|(a, b)| op(*a, *b)).collect();
        Ok(self.expand(&l))
    }
}

/// `sup` of `x` and `y` in the subspace spanned by `basis`.
pub fn sup_in(basis: &PositiveBasis, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    basis.sup(x, y)
}

/// `inf` of `x` and `y` in the subspace spanned by `basis`.
pub fn inf_in(basis: &PositiveBasis, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    basis.inf(x, y)
}

/// Coordinates of `x` in `basis`.
pub fn coords_in_basis(basis: &PositiveBasis, x: &[f64]) -> Result<Vec<f64>> {
    basis.coords(x)
}

/// Positive basis of `span(X)` when it is a lattice-subspace.
///
/// With `A` the `n × n` matrix whose columns are the `n` independent hull
/// vertices of the range, the basis rows are `A⁻¹ · [x₁; …; xₙ]`. Row `i`
/// of `A` holds the coordinates of `xᵢ` in that basis.
pub fn positive_basis(
    x: &PayoffCollection,
    range: &BetaRange,
    opts: &Options,
) -> Result<PositiveBasis> {
    let n = x.n();
    let (m, d) = (range.m(), range.d());
    if m != n && d != n {
        return Err(Error::NotLatticeSubspace { n, m, d });
    }
    let cols: Vec<Vec<f64>> = range.independent_prefix[..n]
        .iter()
        .map(|&s| range.points[s].clone())
        .collect();
    let a = Matrix::from_columns(&cols)?;
    let rhs = x.to_row_matrix();
    let b = solve(&a, &rhs, opts.pivot_tol)?;
    let scale = b.max_abs();
    let basis: Vec<Vec<f64>> = (0..n)
        .map(|s| {
            b.row(s)
                .iter()
                .map(|&v| if v.abs() <= opts.pivot_tol * scale { 0.0 } else { v })
                .collect()
        })
        .collect();
    Ok(PositiveBasis::from_parts(basis, a))
}
