use crate::error::{Error, Result};
use crate::numerics::{rank_of, Matrix, PIVOT_TOL};

/// `n` nonnegative, linearly independent vectors of `R^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffCollection {
    k: usize,
    vectors: Vec<Vec<f64>>,
}

impl PayoffCollection {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tol(vectors, PIVOT_TOL)
    }

    /// Validates with an explicit rank tolerance.
    pub fn with_tol(vectors: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let Some(first) = vectors.first() else {
            return Err(Error::InvalidCollection("no vectors given".into()));
        };
        let k = first.len();
        if k == 0 {
            return Err(Error::InvalidCollection("vectors are empty".into()));
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != k {
                return Err(Error::InvalidCollection(format!(
                    "vector {i} has length {}, expected {k}",
                    v.len()
                )));
            }
            if let Some(j) = v.iter().position(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::InvalidCollection(format!(
                    "vector {i} has entry {} at state {j}; entries must be finite and nonnegative",
                    v[j]
                )));
            }
        }
        let n = vectors.len();
        if n > k {
            return Err(Error::InvalidCollection(format!(
                "{n} vectors in R^{k} cannot be linearly independent"
            )));
        }
        let r = rank_of(&vectors, tol);
        if r != n {
            return Err(Error::InvalidCollection(format!(
                "vectors are linearly dependent (rank {r}, expected {n})"
            )));
        }
        Ok(Self { k, vectors })
    }

    /// Reads the vectors from the columns of a `k × n` matrix.
    pub fn from_columns(m: &Matrix) -> Result<Self> {
        Self::new(m.column_vecs())
    }

    /// Reads the vectors from the rows of an `n × k` matrix.
    pub fn from_rows(m: &Matrix) -> Result<Self> {
        Self::new(m.row_vecs())
    }

    /// Ambient dimension.
    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of vectors.
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    pub fn into_vectors(self) -> Vec<Vec<f64>> {
        self.vectors
    }

    /// `n × k` matrix with the vectors as rows.
    pub fn to_row_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.vectors).expect("validated at construction")
    }

    /// `r(i) = (x₁(i), …, xₙ(i))`, the payoff profile of state `i`.
    pub fn state_profile(&self, i: usize) -> Vec<f64> {
        self.vectors.iter().map(|v| v[i]).collect()
    }

    /// `Σ θᵢ xᵢ`.
    pub fn combine(&self, weights: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.k];
        for (w, v) in weights.iter().zip(&self.vectors) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += w * x;
            }
        }
        out
    }
}
