//! The parametric decision problem: prior, cost, and expected-cost
//! evaluation of strategy tables.
//!
//! Two agents `B` and `H` observe independent noisy copies of a uniform
//! environmental bit and act so that the XOR of their actions estimates it.
//! Everything downstream (classical, quantum, no-signalling) is scored
//! through [`expected_cost`] on a common [`StrategyTable`].

use crate::{Error, Result};

/// Absolute tolerance for strategy-table positivity and normalization.
pub const TABLE_TOL: f64 = 1e-9;

/// Absolute tolerance for prior normalization checks.
pub const PRIOR_TOL: f64 = 1e-12;

/// The tuple (λ_B, λ_H, χ(0), χ(1)) parametrizing prior and cost.
///
/// λ_i is the probability that agent i's observation matches the
/// environmental bit; χ(w) is the reward weight for correctly estimating
/// the environmental state w.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecisionProblem {
    lambda_b: f64,
    lambda_h: f64,
    chi0: f64,
    chi1: f64,
}

impl DecisionProblem {
    /// Builds a problem, rejecting λ outside [1/2, 1] and negative χ.
    pub fn new(lambda_b: f64, lambda_h: f64, chi0: f64, chi1: f64) -> Result<Self> {
        for (name, l) in [("lambda_b", lambda_b), ("lambda_h", lambda_h)] {
            if !(0.5..=1.0).contains(&l) {
                return Err(Error::InvalidProblem(format!(
                    "{name} = {l} outside [1/2, 1]"
                )));
            }
        }
        for (name, c) in [("chi0", chi0), ("chi1", chi1)] {
            if !c.is_finite() || c < 0.0 {
                return Err(Error::InvalidProblem(format!("{name} = {c} not in [0, inf)")));
            }
        }
        Ok(Self {
            lambda_b,
            lambda_h,
            chi0,
            chi1,
        })
    }

    pub fn lambda_b(&self) -> f64 {
        self.lambda_b
    }

    pub fn lambda_h(&self) -> f64 {
        self.lambda_h
    }

    /// Cost weight χ(ξ_w).
    pub fn chi(&self, xi_w: u8) -> f64 {
        if xi_w == 0 {
            self.chi0
        } else {
            self.chi1
        }
    }

    /// The same problem with the two agents relabelled.
    pub fn swap_agents(&self) -> Self {
        Self {
            lambda_b: self.lambda_h,
            lambda_h: self.lambda_b,
            ..*self
        }
    }
}

/// Joint distribution P(ξ_B, ξ_H, ξ_W) over {0,1}³.
#[derive(Debug, Clone, PartialEq)]
pub struct JointPrior {
    // Indexed by ξ_b·4 + ξ_h·2 + ξ_w.
    table: [f64; 8],
}

impl JointPrior {
    pub fn get(&self, xi_b: u8, xi_h: u8, xi_w: u8) -> f64 {
        self.table[(xi_b as usize) << 2 | (xi_h as usize) << 1 | xi_w as usize]
    }

    /// Marginal P(ξ_W = w).
    pub fn marginal_w(&self, xi_w: u8) -> f64 {
        let mut sum = 0.0;
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                sum += self.get(xi_b, xi_h, xi_w);
            }
        }
        sum
    }
}

/// Builds the factorized prior P(ξ_W)·P(ξ_B|ξ_W)·P(ξ_H|ξ_W) with a uniform
/// environmental bit and the match-probability channels λ_B, λ_H.
pub fn joint_prior(d: &DecisionProblem) -> JointPrior {
    let m = |x: u8, w: u8, lambda: f64| if x == w { lambda } else { 1.0 - lambda };
    let mut table = [0.0; 8];
    for xi_b in 0..2u8 {
        for xi_h in 0..2u8 {
            for xi_w in 0..2u8 {
                table[(xi_b as usize) << 2 | (xi_h as usize) << 1 | xi_w as usize] =
                    0.5 * m(xi_b, xi_w, d.lambda_b) * m(xi_h, xi_w, d.lambda_h);
            }
        }
    }
    JointPrior { table }
}

/// Per-outcome cost: −χ(ξ_W) when the XOR estimate hits ξ_W, else 0.
pub fn cost(u_b: u8, u_h: u8, xi_w: u8, d: &DecisionProblem) -> f64 {
    if u_b ^ u_h == xi_w {
        -d.chi(xi_w)
    } else {
        0.0
    }
}

/// Conditional distribution Q(u_B, u_H | ξ_B, ξ_H): the common currency of
/// all three strategy spaces.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyTable {
    // q[obs][act] with obs = ξ_b·2 + ξ_h and act = u_b·2 + u_h.
    q: [[f64; 4]; 4],
}

impl StrategyTable {
    pub fn from_fn(f: impl Fn(u8, u8, u8, u8) -> f64) -> Self {
        let mut q = [[0.0; 4]; 4];
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                for u_b in 0..2u8 {
                    for u_h in 0..2u8 {
                        q[obs_index(xi_b, xi_h)][act_index(u_b, u_h)] = f(u_b, u_h, xi_b, xi_h);
                    }
                }
            }
        }
        Self { q }
    }

    pub fn get(&self, u_b: u8, u_h: u8, xi_b: u8, xi_h: u8) -> f64 {
        self.q[obs_index(xi_b, xi_h)][act_index(u_b, u_h)]
    }

    /// Entrywise convex combination α·self + (1−α)·other.
    pub fn mix(&self, other: &StrategyTable, alpha: f64) -> StrategyTable {
        StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
            alpha * self.get(u_b, u_h, xi_b, xi_h) + (1.0 - alpha) * other.get(u_b, u_h, xi_b, xi_h)
        })
    }

    /// Largest entrywise absolute difference.
    pub fn max_abs_diff(&self, other: &StrategyTable) -> f64 {
        let mut worst = 0.0f64;
        for obs in 0..4 {
            for act in 0..4 {
                worst = worst.max((self.q[obs][act] - other.q[obs][act]).abs());
            }
        }
        worst
    }

    /// Total-variation distance between the two conditionals at one
    /// observation pair.
    pub fn tv_distance_at(&self, other: &StrategyTable, xi_b: u8, xi_h: u8) -> f64 {
        let obs = obs_index(xi_b, xi_h);
        0.5 * (0..4)
            .map(|act| (self.q[obs][act] - other.q[obs][act]).abs())
            .sum::<f64>()
    }
}

fn obs_index(xi_b: u8, xi_h: u8) -> usize {
    (xi_b as usize) << 1 | xi_h as usize
}

fn act_index(u_b: u8, u_h: u8) -> usize {
    (u_b as usize) << 1 | u_h as usize
}

/// Checks positivity and per-observation normalization within [`TABLE_TOL`],
/// naming the first violated cell or row.
pub fn validate_strategy_table(q: &StrategyTable) -> Result<()> {
    for xi_b in 0..2u8 {
        for xi_h in 0..2u8 {
            let mut row_sum = 0.0;
            for u_b in 0..2u8 {
                for u_h in 0..2u8 {
                    let p = q.get(u_b, u_h, xi_b, xi_h);
                    if p < -TABLE_TOL {
                        return Err(Error::InvalidStrategyTable(format!(
                            "entry ({u_b},{u_h}|{xi_b},{xi_h}) = {p} is negative"
                        )));
                    }
                    row_sum += p;
                }
            }
            if (row_sum - 1.0).abs() > TABLE_TOL {
                return Err(Error::InvalidStrategyTable(format!(
                    "row ({xi_b},{xi_h}) sums to {row_sum}"
                )));
            }
        }
    }
    Ok(())
}

/// Expected cost Σ P(ξ_B,ξ_H,ξ_W)·ℓ(u,ξ_W)·Q(u|ξ).
///
/// Accumulation runs in fixed lexicographic order over
/// (u_b, u_h, ξ_b, ξ_h, ξ_w) so serial and parallel callers agree
/// bit-for-bit.
pub fn expected_cost(q: &StrategyTable, d: &DecisionProblem) -> Result<f64> {
    validate_strategy_table(q)?;
    let prior = joint_prior(d);
    let mut total = 0.0;
    for u_b in 0..2u8 {
        for u_h in 0..2u8 {
            for xi_b in 0..2u8 {
                for xi_h in 0..2u8 {
                    for xi_w in 0..2u8 {
                        total += prior.get(xi_b, xi_h, xi_w)
                            * cost(u_b, u_h, xi_w, d)
                            * q.get(u_b, u_h, xi_b, xi_h);
                    }
                }
            }
        }
    }
    Ok(total)
}
