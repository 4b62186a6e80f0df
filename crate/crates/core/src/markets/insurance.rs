//! Minimum-cost portfolio insurance.
//!
//! Given payoffs `x₁ … xₙ`, prices `p`, a portfolio `θ` and a floor `φ`,
//! find the cheapest portfolio whose payoff dominates `R(θ) ∨ R(φ)`:
//!
//! ```text
//! min p·η  subject to  Σ ηᵢ xᵢ ≥ R(θ) ∨ R(φ),  η ∈ Rⁿ.
//! ```

use crate::error::{Error, Result};
use crate::lattice::{minimal_lattice_subspace, pointwise_sup, PayoffCollection};
use crate::numerics::{simplex_solve, LpProblem, LpStatus, Matrix};
use crate::options::Options;

#[derive(Debug, Clone, PartialEq)]
pub struct InsuranceProblem {
    payoffs: PayoffCollection,
    prices: Vec<f64>,
    portfolio: Vec<f64>,
    floor: Vec<f64>,
}

impl InsuranceProblem {
    /// Requires `Σ xᵢ` to be strictly positive in every state.
    pub fn new(
        payoffs: PayoffCollection,
        prices: Vec<f64>,
        portfolio: Vec<f64>,
        floor: Vec<f64>,
    ) -> Result<Self> {
        let n = payoffs.n();
        for (name, v) in [("prices", &prices), ("portfolio", &portfolio), ("floor", &floor)] {
            if v.len() != n {
                return Err(Error::InvalidInsurance(format!(
                    "{name} has {} entries, expected {n}",
                    v.len()
                )));
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidInsurance(format!("{name} is not finite")));
            }
        }
        let total = payoffs.combine(&vec![1.0; n]);
        if let Some(state) = total.iter().position(|&v| v <= 0.0) {
            return Err(Error::InvalidInsurance(format!(
                "the payoffs sum to zero in state {state}"
            )));
        }
        Ok(Self {
            payoffs,
            prices,
            portfolio,
            floor,
        })
    }

    pub fn payoffs(&self) -> &PayoffCollection {
        &self.payoffs
    }

    pub fn prices(&self) -> &[f64] {
        &self.prices
    }

    pub fn portfolio(&self) -> &[f64] {
        &self.portfolio
    }

    pub fn floor(&self) -> &[f64] {
        &self.floor
    }

    /// `R(θ) ∨ R(φ)`.
    pub fn target(&self) -> Vec<f64> {
        pointwise_sup(
            &self.payoffs.combine(&self.portfolio),
            &self.payoffs.combine(&self.floor),
        )
    }

    /// The insurance problem as a linear program over `η`.
    pub fn to_lp(&self) -> Result<LpProblem> {
        // Row j: Σᵢ ηᵢ xᵢ(j) ≥ target(j).
        let g = Matrix::from_columns(self.payoffs.vectors())?;
        LpProblem::new(self.prices.clone(), g, self.target())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InsuranceSolution {
    pub eta: Vec<f64>,
    pub cost: f64,
    /// `R(η*)`.
    pub payoff: Vec<f64>,
    /// `R(θ) ∨ R(φ)`.
    pub target: Vec<f64>,
    /// Supremum of `R(θ)` and `R(φ)` inside a minimal lattice-subspace
    /// containing the payoffs; reported for comparison only.
    pub lattice_sup: Vec<f64>,
}

pub fn min_cost_insurance(problem: &InsuranceProblem, opts: &Options) -> Result<InsuranceSolution> {
    let lp = problem.to_lp()?;
    let sol = simplex_solve(&lp)?;
    match sol.status {
        LpStatus::Infeasible => return Err(Error::NoInsurance),
        LpStatus::Unbounded => return Err(Error::ArbitragePrices),
        LpStatus::Optimal => {}
    }
    let payoff = problem.payoffs.combine(&sol.x);
    let minlat = minimal_lattice_subspace(&problem.payoffs, opts)?;
    let lattice_sup = minlat.basis.sup(
        &problem.payoffs.combine(&problem.portfolio),
        &problem.payoffs.combine(&problem.floor),
    )?;
    Ok(InsuranceSolution {
        cost: sol.objective_value,
        eta: sol.x,
        payoff,
        target: lp.rhs,
        lattice_sup,
    })
}
