//! Classification of a span and the two enlargements: the generated vector
//! sublattice and a minimal lattice-subspace.

use super::basis::{positive_basis, PositiveBasis};
use super::beta::{basic_function, beta_range, BasicFunctionTable, BetaRange};
use super::payoff::PayoffCollection;
use crate::error::{Error, Result};
use crate::numerics::{nnls, Matrix, NNLS_TOL};
use crate::options::Options;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LatticeKind {
    /// `m = n`: closed under the pointwise supremum and infimum.
    VectorSublattice,
    /// `d = n < m`: a lattice in its own order, not a sublattice.
    LatticeSubspace,
    /// `d > n`.
    Neither,
}

impl LatticeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LatticeKind::VectorSublattice => "VectorSublattice",
            LatticeKind::LatticeSubspace => "LatticeSubspace",
            LatticeKind::Neither => "Neither",
        }
    }

    pub fn has_positive_basis(self) -> bool {
        self != LatticeKind::Neither
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub kind: LatticeKind,
    pub n: usize,
    pub m: usize,
    pub d: usize,
    pub k: usize,
}

/// Basic function and range of one collection, computed once and shared by
/// the classification and the constructions.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub table: BasicFunctionTable,
    pub range: BetaRange,
}

impl Analysis {
    pub fn new(x: &PayoffCollection, opts: &Options) -> Result<Self> {
        let table = basic_function(x)?;
        let range = beta_range(&table, opts)?;
        Ok(Self { table, range })
    }

    pub fn classification(&self) -> Classification {
        let (n, m, d) = (self.table.n, self.range.m(), self.range.d());
        let kind = if m == n {
            LatticeKind::VectorSublattice
        } else if d == n {
            LatticeKind::LatticeSubspace
        } else {
            LatticeKind::Neither
        };
        Classification {
            kind,
            n,
            m,
            d,
            k: self.table.k,
        }
    }
}

pub fn classify(x: &PayoffCollection, opts: &Options) -> Result<Classification> {
    Ok(Analysis::new(x, opts)?.classification())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SublatticeResult {
    /// The inputs followed by the appended vectors.
    pub generators: Vec<Vec<f64>>,
    pub n_inputs: usize,
    pub basis: PositiveBasis,
}

impl SublatticeResult {
    /// Dimension of the generated sublattice (`m`).
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn appended(&self) -> &[Vec<f64>] {
        &self.generators[self.n_inputs..]
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinLatResult {
    /// The inputs followed by the appended vectors.
    pub generators: Vec<Vec<f64>>,
    pub n_inputs: usize,
    /// Hull vertices `P₁ … P_d`, the first `n` linearly independent.
    pub vertices: Vec<Vec<f64>>,
    /// States of `D(β)` in increasing order; the columns of `xi`.
    pub domain: Vec<usize>,
    /// `xi[i][c] = ξᵢ(domain[c])`, so `β(j) = Σᵢ ξᵢ(j)·Pᵢ`.
    pub xi: Vec<Vec<f64>>,
    pub basis: PositiveBasis,
}

impl MinLatResult {
    /// Dimension of the minimal lattice-subspace (`d`).
    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn appended(&self) -> &[Vec<f64>] {
        &self.generators[self.n_inputs..]
    }

    /// `d × |D(β)|` matrix of the convex weights.
    pub fn xi_matrix(&self) -> Matrix {
        Matrix::from_rows(&self.xi).expect("xi table is rectangular")
    }
}

fn basis_of(x: &PayoffCollection, opts: &Options) -> Result<PositiveBasis> {
    let analysis = Analysis::new(x, opts)?;
    positive_basis(x, &analysis.range, opts)
}

/// The vector sublattice generated by `X`.
///
/// Each point of the range outside the first `n` linearly independent
/// points contributes `x_s = Σ_{i ∈ I_s} ‖r(i)‖₁ eᵢ`; together with the
/// inputs these span an `m`-dimensional sublattice.
pub fn generate_sublattice(x: &PayoffCollection, opts: &Options) -> Result<SublatticeResult> {
    let analysis = Analysis::new(x, opts)?;
    let Analysis { table, range } = &analysis;
    let n = x.n();
    if range.m() == n {
        return Ok(SublatticeResult {
            generators: x.vectors().to_vec(),
            n_inputs: n,
            basis: positive_basis(x, range, opts)?,
        });
    }
    let mut generators = x.vectors().to_vec();
    for s in (0..range.m()).filter(|s| !range.spanning_points.contains(s)) {
        let mut v = vec![0.0; x.k()];
        for &state in &range.preimages[s] {
            let pos = table.position(state).expect("preimages lie in the domain");
            v[state] = table.norms[pos];
        }
        generators.push(v);
    }
    let z = PayoffCollection::with_tol(generators, opts.pivot_tol)?;
    let basis = basis_of(&z, opts)?;
    Ok(SublatticeResult {
        generators: z.into_vectors(),
        n_inputs: n,
        basis,
    })
}

/// A minimal lattice-subspace containing `X`.
///
/// Every `β(j)` is written as a convex combination `Σ ξᵢ(j)·Pᵢ` of the `d`
/// hull vertices by nonnegative least squares; the weights on the vertices
/// beyond the independent prefix give `x_{n+i} = Σ_j ξ_{n+i}(j)‖r(j)‖₁ e_j`.
/// The weights are not unique in general; the solver's lowest-index tie
/// rule fixes one choice.
pub fn minimal_lattice_subspace(x: &PayoffCollection, opts: &Options) -> Result<MinLatResult> {
    let analysis = Analysis::new(x, opts)?;
    let Analysis { table, range } = &analysis;
    let n = x.n();
    let vertices: Vec<Vec<f64>> = range
        .ordered_vertices()
        .iter()
        .map(|&s| range.points[s].clone())
        .collect();
    let d = vertices.len();
    let p = Matrix::from_columns(&vertices)?;

    let columns: Vec<Vec<f64>> = opts.exec.try_map(table.domain.len(), |pos| {
        let fit = nnls(&p, &table.beta_rows[pos], NNLS_TOL)?;
        if fit.residual_norm > opts.representation_tol {
            return Err(Error::RepresentationInfeasible {
                state: table.domain[pos],
                residual: fit.residual_norm,
            });
        }
        Ok(fit.solution)
    })?;
    let xi: Vec<Vec<f64>> = (0..d)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();

    if d == n {
        return Ok(MinLatResult {
            generators: x.vectors().to_vec(),
            n_inputs: n,
            vertices,
            domain: table.domain.clone(),
            xi,
            basis: positive_basis(x, range, opts)?,
        });
    }

    let mut generators = x.vectors().to_vec();
    for row in &xi[n..] {
        let mut v = vec![0.0; x.k()];
        for (pos, &state) in table.domain.iter().enumerate() {
            v[state] = row[pos] * table.norms[pos];
        }
        generators.push(v);
    }
    let y = PayoffCollection::with_tol(generators, opts.pivot_tol)?;
    let basis = basis_of(&y, opts)?;
    Ok(MinLatResult {
        generators: y.into_vectors(),
        n_inputs: n,
        vertices,
        domain: table.domain.clone(),
        xi,
        basis,
    })
}
