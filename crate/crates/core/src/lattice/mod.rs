//! Vector sublattices, lattice-subspaces and positive bases of `R^k`
//! under the pointwise order.

mod basis;
mod beta;
mod generate;
mod payoff;

pub use basis::{coords_in_basis, inf_in, positive_basis, sup_in, PositiveBasis};
pub use beta::{basic_function, beta_range, BasicFunctionTable, BetaRange};
pub use generate::{
    classify, generate_sublattice, minimal_lattice_subspace, Analysis, Classification,
    LatticeKind, MinLatResult, SublatticeResult,
};
pub use payoff::PayoffCollection;

/// Componentwise maximum.
pub fn pointwise_sup(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a.max(*b)).collect()
}

/// Componentwise minimum.
pub fn pointwise_inf(x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter().zip(y).map(|(a, b)| a.min(*b)).collect()
}
