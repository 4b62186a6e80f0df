//! Dense two-phase tableau simplex with Bland's anti-cycling rule.
//!
//! Solves `min c·x subject to G·x ≥ h` over free `x`. Each free variable
//! is split as `x = x⁺ − x⁻` and each row gets a surplus variable, giving
//! the standard form `G·x⁺ − G·x⁻ − s = h` with all variables nonnegative.

use super::matrix::Matrix;
use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-10;
const COST_EPS: f64 = 1e-10;
const PHASE1_FEAS: f64 = 1e-8;
const MAX_ITER: usize = 50_000;

#[derive(Debug, Clone, PartialEq)]
pub struct LpProblem {
    pub objective: Vec<f64>,
    pub constraints: Matrix,
    pub rhs: Vec<f64>,
}

impl LpProblem {
    pub fn new(objective: Vec<f64>, constraints: Matrix, rhs: Vec<f64>) -> Result<Self> {
        if constraints.cols() != objective.len() {
            return Err(Error::DimensionMismatch(format!(
                "objective has {} entries, constraints have {} columns",
                objective.len(),
                constraints.cols()
            )));
        }
        if constraints.rows() != rhs.len() {
            return Err(Error::DimensionMismatch(format!(
                "rhs has {} entries, constraints have {} rows",
                rhs.len(),
                constraints.rows()
            )));
        }
        if objective.iter().chain(&rhs).any(|v| !v.is_finite()) {
            return Err(Error::InvalidMatrix("non-finite LP data".into()));
        }
        Ok(Self {
            objective,
            constraints,
            rhs,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Primal point; meaningful only when `status` is `Optimal`.
    pub x: Vec<f64>,
    pub objective_value: f64,
    /// Multipliers of the `≥` rows (nonnegative at optimality).
    pub duals: Vec<f64>,
}

struct Tableau {
    t: Matrix,
    basis: Vec<usize>,
    rows: usize,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols + 1;
        let piv = self.t[(r, c)];
        for v in self.t.row_mut(r) {
            *v /= piv;
        }
        self.t[(r, c)] = 1.0;
        let prow = self.t.row(r).to_vec();
        for i in 0..=self.rows {
            if i == r {
                continue;
            }
            let f = self.t[(i, c)];
            if f != 0.0 {
                let row = self.t.row_mut(i);
                for j in 0..width {
                    row[j] -= f * prow[j];
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn rhs(&self, i: usize) -> f64 {
        self.t[(i, self.cols)]
    }

    /// Runs simplex iterations with Bland's rule over the allowed columns.
    /// Returns `false` if the problem is unbounded.
    fn optimize(&mut self, allowed: &[bool], iterations: &mut usize) -> Result<bool> {
        loop {
            *iterations += 1;
            if *iterations > MAX_ITER {
                return Err(Error::NonConvergence {
                    solver: "simplex",
                    iterations: MAX_ITER,
                });
            }
            let obj = self.rows;
            let Some(enter) = (0..self.cols).find(|&j| allowed[j] && self.t[(obj, j)] < -COST_EPS)
            else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.t[(i, enter)];
                if a > PIVOT_EPS {
                    let ratio = self.rhs(i) / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-12
                                || ((ratio - lr).abs() <= 1e-12 && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Two-phase simplex. Infeasible and unbounded problems are reported
/// through [`LpStatus`]; only iteration exhaustion is an error.
pub fn simplex_solve(problem: &LpProblem) -> Result<LpSolution> {
    let g = &problem.constraints;
    let (p, n) = g.shape();
    // Column layout: x⁺ [0, n), x⁻ [n, 2n), surplus [2n, 2n+p), artificial [2n+p, 2n+2p).
    let n_struct = 2 * n + p;
    let cols = n_struct + p;
    let mut t = Matrix::zeros(p + 1, cols + 1);

    for i in 0..p {
        let s = if problem.rhs[i] < 0.0 { -1.0 } else { 1.0 };
        for j in 0..n {
            t[(i, j)] = s * g[(i, j)];
            t[(i, n + j)] = -s * g[(i, j)];
        }
        t[(i, 2 * n + i)] = -s;
        t[(i, n_struct + i)] = 1.0;
        t[(i, cols)] = s * problem.rhs[i];
    }
    // Phase-one reduced costs: minimize the sum of artificials.
    for j in 0..=cols {
        if (n_struct..cols).contains(&j) {
            continue;
        }
        let s: f64 = (0..p).map(|i| t[(i, j)]).sum();
        t[(p, j)] = -s;
    }

    let mut tab = Tableau {
        t,
        basis: (n_struct..cols).collect(),
        rows: p,
        cols,
    };
    let mut iterations = 0;
    let all = vec![true; cols];
    tab.optimize(&all, &mut iterations)?;

    let infeas = -tab.t[(p, cols)];
    if infeas > PHASE1_FEAS * (1.0 + problem.rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()))) {
        return Ok(LpSolution {
            status: LpStatus::Infeasible,
            x: vec![0.0; n],
            objective_value: f64::NAN,
            duals: vec![0.0; p],
        });
    }

    // Drive zero-level artificials out of the basis where possible.
    for i in 0..p {
        if tab.basis[i] >= n_struct {
            if let Some(c) = (0..n_struct).find(|&j| tab.t[(i, j)].abs() > PIVOT_EPS) {
                tab.pivot(i, c);
            }
        }
    }

    // Phase-two reduced costs.
    let cost = |j: usize| -> f64 {
        if j < n {
            problem.objective[j]
        } else if j < 2 * n {
            -problem.objective[j - n]
        } else {
            0.0
        }
    };
    for j in 0..=cols {
        let cb: f64 = (0..p)
            .map(|i| if tab.basis[i] < n_struct { cost(tab.basis[i]) } else { 0.0 } * tab.t[(i, j)])
            .sum();
        tab.t[(p, j)] = if j < cols { cost(j) - cb } else { -cb };
    }
    let allowed: Vec<bool> = (0..cols).map(|j| j < n_struct).collect();
    if !tab.optimize(&allowed, &mut iterations)? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            x: vec![0.0; n],
            objective_value: f64::NEG_INFINITY,
            duals: vec![0.0; p],
        });
    }

    let mut v = vec![0.0; cols];
    for i in 0..p {
        v[tab.basis[i]] = tab.rhs(i);
    }
    let x: Vec<f64> = (0..n).map(|j| v[j] - v[n + j]).collect();
    let objective_value = x.iter().zip(&problem.objective).map(|(a, b)| a * b).sum();
    // Surplus column of row i is −sign·eᵢ, so its reduced cost equals the
    // dual of the original row.
    let duals = (0..p).map(|i| tab.t[(p, 2 * n + i)]).collect();
    Ok(LpSolution {
        status: LpStatus::Optimal,
        x,
        objective_value,
        duals,
    })
}
