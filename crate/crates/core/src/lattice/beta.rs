//! The basic function of a payoff collection and its range.
//!
//! For state `i` let `r(i) = (x₁(i), …, xₙ(i))`. Where `r(i) ≠ 0` the basic
//! function is `β(i) = r(i) / ‖r(i)‖₁`, a point of the unit simplex of
//! `R^n`. Its distinct values and the vertices of their convex hull decide
//! whether the span of the collection is a vector sublattice or a
//! lattice-subspace.

use std::cmp::Ordering;

use super::payoff::PayoffCollection;
use crate::error::{Error, Result};
use crate::numerics::{is_vertex, max_abs_diff, max_lin_indep};
use crate::options::Options;

/// `β` tabulated over its domain `D(β)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicFunctionTable {
    pub n: usize,
    pub k: usize,
    /// States with `‖r(i)‖₁ ≠ 0`, increasing.
    pub domain: Vec<usize>,
    /// `‖r(i)‖₁` for each state of the domain.
    pub norms: Vec<f64>,
    /// `β(i)` for each state of the domain.
    pub beta_rows: Vec<Vec<f64>>,
}

impl BasicFunctionTable {
    /// Position of `state` within the domain, if it belongs to it.
    pub fn position(&self, state: usize) -> Option<usize> {
        self.domain.binary_search(&state).ok()
    }
}

pub fn basic_function(x: &PayoffCollection) -> Result<BasicFunctionTable> {
    let mut domain = Vec::new();
    let mut norms = Vec::new();
    let mut beta_rows = Vec::new();
    for i in 0..x.k() {
        let r = x.state_profile(i);
        // Entries are nonnegative, so the 1-norm is the plain sum.
        let norm: f64 = r.iter().sum();
        if norm != 0.0 {
            domain.push(i);
            norms.push(norm);
            beta_rows.push(r.iter().map(|v| v / norm).collect());
        }
    }
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    Ok(BasicFunctionTable {
        n: x.n(),
        k: x.k(),
        domain,
        norms,
        beta_rows,
    })
}

/// The distinct values `P₁ … P_m` of `β` and the hull structure over them.
#[derive(Debug, Clone, PartialEq)]
pub struct BetaRange {
    pub n: usize,
    /// Distinct values of `β` in ascending lexicographic order.
    pub points: Vec<Vec<f64>>,
    /// `I_s = β⁻¹(P_s)`, increasing state indices.
    pub preimages: Vec<Vec<usize>>,
    /// Whether each point is a vertex of the convex hull `K`.
    pub vertex_flags: Vec<bool>,
    /// Permutation of the points: `n` linearly independent vertices
    /// (greedy in canonical order), the remaining vertices, then the
    /// non-vertices.
    pub independent_prefix: Vec<usize>,
    /// The first `n` linearly independent points in canonical order,
    /// vertex or not.
    pub spanning_points: Vec<usize>,
}

impl BetaRange {
    /// `card R(β)`.
    pub fn m(&self) -> usize {
        self.points.len()
    }

    /// Number of vertices of `K`.
    pub fn d(&self) -> usize {
        self.vertex_flags.iter().filter(|&&v| v).count()
    }

    /// Vertex indices in the order of [`BetaRange::independent_prefix`].
    pub fn ordered_vertices(&self) -> &[usize] {
        &self.independent_prefix[..self.d()]
    }
}

/// Lexicographic order with coordinates within `tol` treated as equal.
fn lex_cmp(a: &[f64], b: &[f64], tol: f64) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() > tol {
            return x.partial_cmp(y).unwrap_or(Ordering::Equal);
        }
    }
    Ordering::Equal
}

pub fn beta_range(t: &BasicFunctionTable, opts: &Options) -> Result<BetaRange> {
    if t.domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    // Cluster in domain order; the first state of each cluster is its
    // representative.
    let mut reps: Vec<Vec<f64>> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (pos, row) in t.beta_rows.iter().enumerate() {
        match reps
            .iter()
            .position(|p| max_abs_diff(p, row) <= opts.dedup_tol)
        {
            Some(s) => members[s].push(t.domain[pos]),
            None => {
                reps.push(row.clone());
                members.push(vec![t.domain[pos]]);
            }
        }
    }
    let mut order: Vec<usize> = (0..reps.len()).collect();
    order.sort_by(|&a, &b| lex_cmp(&reps[a], &reps[b], opts.dedup_tol).then(a.cmp(&b)));
    let points: Vec<Vec<f64>> = order.iter().map(|&s| reps[s].clone()).collect();
    let preimages: Vec<Vec<usize>> = order.iter().map(|&s| members[s].clone()).collect();

    let vertex_flags = opts
        .exec
        .try_map(points.len(), |i| is_vertex(&points, i, opts.residual_tol))?;

    let vertices: Vec<usize> = (0..points.len()).filter(|&i| vertex_flags[i]).collect();
    let vertex_points: Vec<Vec<f64>> = vertices.iter().map(|&i| points[i].clone()).collect();
    let indep: Vec<usize> = max_lin_indep(&vertex_points, opts.pivot_tol)
        .into_iter()
        .map(|i| vertices[i])
        .collect();
    if indep.len() < t.n {
        return Err(Error::InsufficientVertices {
            found: indep.len(),
            expected: t.n,
        });
    }
    let mut independent_prefix = indep.clone();
    independent_prefix.extend(vertices.iter().filter(|v| !indep.contains(v)));
    independent_prefix.extend((0..points.len()).filter(|&i| !vertex_flags[i]));

    let spanning_points = max_lin_indep(&points, opts.pivot_tol);
    if spanning_points.len() != t.n {
        return Err(Error::InsufficientVertices {
            found: spanning_points.len(),
            expected: t.n,
        });
    }

    Ok(BetaRange {
        n: t.n,
        points,
        preimages,
        vertex_flags,
        independent_prefix,
        spanning_points,
    })
}
