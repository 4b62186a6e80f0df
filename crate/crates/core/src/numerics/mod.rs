//! Dense linear-algebra and optimization kernels.

mod hull;
mod matrix;
mod nnls;
mod rref;
mod simplex;
mod solve;

pub use hull::is_vertex;
pub use matrix::{dot, max_abs_diff, norm1, norm2, Matrix};
pub use nnls::{nnls, NnlsResult};
pub use rref::{max_lin_indep, max_lin_indep_rows, rank, rank_of, rref, RrefResult};
pub use simplex::{simplex_solve, LpProblem, LpSolution, LpStatus};
pub use solve::{least_squares, residual_norm, solve, solve_vec};

/// Default threshold for pivots and zero tests.
pub const PIVOT_TOL: f64 = 1e-9;
/// Default threshold for residual and feasibility tests.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Dual optimality threshold used by the internal NNLS solves.
pub const NNLS_TOL: f64 = 1e-12;
