//! Completion of a one-period security market by options.
//!
//! The completion `F_U(X)` of the marketed space `X` with respect to a
//! strike subspace `U` is the vector sublattice generated by `X ∪ U`. It is
//! computed from a basic set: a maximal linearly independent subset of the
//! positive and negative parts of the primitives (and of the strike vectors
//! when `U ⊄ X`).

use super::options::{negative_part, positive_part};
use crate::error::{Error, Result};
use crate::lattice::{generate_sublattice, Analysis, PayoffCollection, PositiveBasis};
use crate::numerics::{max_lin_indep, rank_of};
use crate::options::Options;

#[derive(Debug, Clone, PartialEq)]
pub struct MarketSpec {
    k: usize,
    primitives: Vec<Vec<f64>>,
    strikes: Vec<Vec<f64>>,
}

impl MarketSpec {
    /// Primitive payoffs may take any sign but must be linearly
    /// independent. An empty strike list means `U = {0}`.
    pub fn new(primitives: Vec<Vec<f64>>, strikes: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_tol(primitives, strikes, crate::numerics::PIVOT_TOL)
    }

    pub fn with_tol(primitives: Vec<Vec<f64>>, strikes: Vec<Vec<f64>>, tol: f64) -> Result<Self> {
        let Some(first) = primitives.first() else {
            return Err(Error::InvalidMarket("no primitive securities".into()));
        };
        let k = first.len();
        if k == 0 {
            return Err(Error::InvalidMarket("payoff vectors are empty".into()));
        }
        for (what, list) in [("primitive", &primitives), ("strike", &strikes)] {
            for (i, v) in list.iter().enumerate() {
                if v.len() != k {
                    return Err(Error::InvalidMarket(format!(
                        "{what} {i} has length {}, expected {k}",
                        v.len()
                    )));
                }
                if v.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidMarket(format!("{what} {i} is not finite")));
                }
            }
        }
        let r = rank_of(&primitives, tol);
        if r != primitives.len() {
            return Err(Error::InvalidMarket(format!(
                "primitive payoffs are linearly dependent (rank {r}, expected {})",
                primitives.len()
            )));
        }
        Ok(Self {
            k,
            primitives,
            strikes,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.primitives.len()
    }

    pub fn primitives(&self) -> &[Vec<f64>] {
        &self.primitives
    }

    pub fn strikes(&self) -> &[Vec<f64>] {
        &self.strikes
    }

    /// Whether `U ⊆ X`, decided by comparing `rank[X; U]` with `rank X`.
    pub fn strikes_in_span(&self, tol: f64) -> bool {
        if self.strikes.is_empty() {
            return true;
        }
        let mut all = self.primitives.clone();
        all.extend(self.strikes.iter().cloned());
        rank_of(&all, tol) == self.n()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CompletionResult {
    pub basic_set: Vec<Vec<f64>>,
    /// The basic set followed by the vectors appended to reach `F_U(X)`.
    pub generators: Vec<Vec<f64>>,
    pub basis: PositiveBasis,
    /// `dim F_U(X)`, equal to `card R(β)` of the basic set.
    pub dimension: usize,
    pub strikes_in_span: bool,
    pub complete: bool,
}

/// Candidates `x₁⁺, x₁⁻, x₂⁺, …` followed by `u₁⁺, u₁⁻, …` when `U ⊄ X`,
/// reduced to the greedy maximal linearly independent subset.
pub fn basic_set(market: &MarketSpec, opts: &Options) -> Result<Vec<Vec<f64>>> {
    let mut candidates = Vec::new();
    for x in market.primitives() {
        candidates.push(positive_part(x));
        candidates.push(negative_part(x));
    }
    if !market.strikes_in_span(opts.pivot_tol) {
        for u in market.strikes() {
            candidates.push(positive_part(u));
            candidates.push(negative_part(u));
        }
    }
    let keep = max_lin_indep(&candidates, opts.pivot_tol);
    if keep.is_empty() {
        return Err(Error::EmptyBasicSet);
    }
    Ok(keep.into_iter().map(|i| candidates[i].clone()).collect())
}

pub fn complete_by_options(market: &MarketSpec, opts: &Options) -> Result<CompletionResult> {
    let basic = basic_set(market, opts)?;
    let in_span = market.strikes_in_span(opts.pivot_tol);
    let collection = PayoffCollection::with_tol(basic.clone(), opts.pivot_tol)?;
    let sub = generate_sublattice(&collection, opts)?;
    let dimension = sub.dim();
    Ok(CompletionResult {
        basic_set: basic,
        generators: sub.generators,
        basis: sub.basis,
        dimension,
        strikes_in_span: in_span,
        complete: in_span && dimension == market.n(),
    })
}

/// `X` is complete by options iff `U ⊆ X` and the basic set's range has
/// exactly `n` points.
pub fn is_complete(market: &MarketSpec, opts: &Options) -> Result<bool> {
    if !market.strikes_in_span(opts.pivot_tol) {
        return Ok(false);
    }
    let basic = basic_set(market, opts)?;
    let collection = PayoffCollection::with_tol(basic, opts.pivot_tol)?;
    let analysis = Analysis::new(&collection, opts)?;
    Ok(analysis.range.m() == market.n())
}
