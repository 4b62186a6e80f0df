use crate::exec::Exec;
use crate::numerics::{PIVOT_TOL, RESIDUAL_TOL};

/// Tolerances and execution strategy shared by the lattice and market
/// operations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Options {
    /// Relative threshold for pivots, rank decisions and zero tests.
    pub pivot_tol: f64,
    /// Threshold for residual, span-membership and vertex tests.
    pub residual_tol: f64,
    /// Two basic-function values are the same point when their max-abs
    /// difference is at most this.
    pub dedup_tol: f64,
    /// Largest accepted residual when writing a basic-function value as a
    /// convex combination of hull vertices.
    pub representation_tol: f64,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            pivot_tol: PIVOT_TOL,
            residual_tol: RESIDUAL_TOL,
            dedup_tol: 1e-9,
            representation_tol: 1e-6,
            exec: Exec::default(),
        }
    }
}

impl Options {
    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    /// Sets the pivot, residual and dedup tolerances to the same value.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.pivot_tol = tol;
        self.residual_tol = tol;
        self.dedup_tol = tol;
        self
    }
}
