use thiserror::Error;

/// Errors raised by the numerical kernels and the lattice/market layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular within tolerance")]
    Singular,

    #[error("{solver} did not converge within {iterations} iterations")]
    NonConvergence {
        solver: &'static str,
        iterations: usize,
    },

    #[error("invalid payoff collection: {0}")]
    InvalidCollection(String),

    #[error("every state has zero payoff; the basic function has an empty domain")]
    EmptyDomain,

    #[error("found {found} linearly independent vertices, expected {expected}")]
    InsufficientVertices { found: usize, expected: usize },

    #[error("span is not a lattice-subspace (n = {n}, m = {m}, d = {d})")]
    NotLatticeSubspace { n: usize, m: usize, d: usize },

    #[error("convex representation of state {state} failed with residual {residual:e}")]
    RepresentationInfeasible { state: usize, residual: f64 },

    #[error("vector lies outside the span of the basis (residual {residual:e})")]
    OutsideSpan { residual: f64 },

    #[error("invalid market: {0}")]
    InvalidMarket(String),

    #[error("basic set is empty: every payoff is zero")]
    EmptyBasicSet,

    #[error("invalid insurance problem: {0}")]
    InvalidInsurance(String),

    #[error("no portfolio dominates the insured payoff")]
    NoInsurance,

    #[error("prices admit unbounded cost reduction")]
    ArbitragePrices,
}

impl Error {
    /// Stable machine-readable code for this error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidMatrix(_) => "invalid_matrix",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::Singular => "singular",
            Error::NonConvergence { .. } => "non_convergence",
            Error::InvalidCollection(_) => "invalid_collection",
            Error::EmptyDomain => "empty_domain",
            Error::InsufficientVertices { .. } => "insufficient_vertices",
            Error::NotLatticeSubspace { .. } => "not_lattice_subspace",
            Error::RepresentationInfeasible { .. } => "representation_infeasible",
            Error::OutsideSpan { .. } => "outside_span",
            Error::InvalidMarket(_) => "invalid_market",
            Error::EmptyBasicSet => "empty_basic_set",
            Error::InvalidInsurance(_) => "invalid_insurance",
            Error::NoInsurance => "no_insurance",
            Error::ArbitragePrices => "arbitrage_prices",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
