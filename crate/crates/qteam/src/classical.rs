//! Classical strategies: deterministic pairs, common-randomness mixtures,
//! and the classical optimum both in closed form and by exhaustive search.

use crate::problem::{expected_cost, joint_prior, DecisionProblem, StrategyTable};
use crate::{Error, Result};

/// A pure strategy pair (γ_B, γ_H), each a total function {0,1} → {0,1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeterministicStrategy {
    pub gamma_b: [u8; 2],
    pub gamma_h: [u8; 2],
}

impl DeterministicStrategy {
    pub const fn constant(u_b: u8, u_h: u8) -> Self {
        Self {
            gamma_b: [u_b, u_b],
            gamma_h: [u_h, u_h],
        }
    }

    /// All 16 strategies, lexicographic on (γ_b(0), γ_b(1), γ_h(0), γ_h(1)).
    pub fn all() -> impl Iterator<Item = Self> {
        (0u8..16).map(|code| Self {
            gamma_b: [code >> 3 & 1, code >> 2 & 1],
            gamma_h: [code >> 1 & 1, code & 1],
        })
    }

    /// Lexicographic rank within [`Self::all`].
    pub fn rank(&self) -> u8 {
        self.gamma_b[0] << 3 | self.gamma_b[1] << 2 | self.gamma_h[0] << 1 | self.gamma_h[1]
    }

    pub fn swap_agents(&self) -> Self {
        Self {
            gamma_b: self.gamma_h,
            gamma_h: self.gamma_b,
        }
    }
}

/// The point-mass table of a deterministic strategy.
pub fn to_table(s: &DeterministicStrategy) -> StrategyTable {
    StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        if u_b == s.gamma_b[xi_b as usize] && u_h == s.gamma_h[xi_h as usize] {
            1.0
        } else {
            0.0
        }
    })
}

/// Per-agent behavioral rows: `rows[ξ][u]` = P(u | ξ).
pub type BehavioralRows = [[f64; 2]; 2];

/// A common-randomness mixture of product-form behavioral strategies.
#[derive(Debug, Clone)]
pub struct LocalMixture {
    pub weights: Vec<f64>,
    pub components: Vec<(BehavioralRows, BehavioralRows)>,
}

impl LocalMixture {
    pub fn from_deterministic(parts: &[(f64, DeterministicStrategy)]) -> Self {
        let point = |g: [u8; 2]| -> BehavioralRows {
            let row = |u: u8| [if u == 0 { 1.0 } else { 0.0 }, if u == 1 { 1.0 } else { 0.0 }];
            [row(g[0]), row(g[1])]
        };
        Self {
            weights: parts.iter().map(|(w, _)| *w).collect(),
            components: parts
                .iter()
                .map(|(_, s)| (point(s.gamma_b), point(s.gamma_h)))
                .collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.weights.len() != self.components.len() || self.weights.is_empty() {
            return Err(Error::InvalidMixture(
                "weights and components must be nonempty and equal-length".into(),
            ));
        }
        let sum: f64 = self.weights.iter().sum();
        if self.weights.iter().any(|w| *w < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidMixture(format!(
                "weights must be nonnegative and sum to 1, got sum {sum}"
            )));
        }
        for (b, h) in &self.components {
            for rows in [b, h] {
                for row in rows {
                    if row[0] < 0.0 || row[1] < 0.0 || (row[0] + row[1] - 1.0).abs() > 1e-12 {
                        return Err(Error::InvalidMixture(format!(
                            "behavioral row {row:?} is not a distribution"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Q(u|ξ) = Σ_ω Φ(ω)·Q_B(u_B|ξ_B,ω)·Q_H(u_H|ξ_H,ω).
pub fn mixture_table(m: &LocalMixture) -> Result<StrategyTable> {
    m.validate()?;
    Ok(StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        m.weights
            .iter()
            .zip(&m.components)
            .map(|(w, (b, h))| w * b[xi_b as usize][u_b as usize] * h[xi_h as usize][u_h as usize])
            .sum()
    }))
}

/// Exact minimum over all 16 deterministic strategies; ties broken by
/// lexicographic order on (γ_b(0), γ_b(1), γ_h(0), γ_h(1)).
pub fn deterministic_optimum(d: &DecisionProblem) -> (f64, DeterministicStrategy) {
    let mut best: Option<(f64, DeterministicStrategy)> = None;
    for s in DeterministicStrategy::all() {
        let cost = expected_cost(&to_table(&s), d).expect("deterministic tables are valid");
        match best {
            Some((c, _)) if cost >= c => {}
            _ => best = Some((cost, s)),
        }
    }
    best.expect("16 strategies enumerated")
}

/// Closed-form classical optimum.
///
/// Evaluates the three-way minimum over constant-0, constant-1, and the more
/// informed agent following its observation; ties resolve in that order.
/// Stated for λ_H ≥ λ_B; the other case is handled by relabelling the agents
/// and swapping back in the reported strategy.
pub fn closed_form_optimum(d: &DecisionProblem) -> (f64, DeterministicStrategy) {
    if d.lambda_b() > d.lambda_h() {
        let (cost, s) = closed_form_optimum(&d.swap_agents());
        return (cost, s.swap_agents());
    }
    let prior = joint_prior(d);
    let p0 = prior.marginal_w(0);
    let p1 = prior.marginal_w(1);
    let const0 = -d.chi(0) * p0;
    let const1 = -d.chi(1) * p1;
    let follow = -d.lambda_h() * (p0 * d.chi(0) + p1 * d.chi(1));
    let j_hat = const0.min(const1).min(follow);

    let gamma_h = if j_hat == const0 {
        [0, 0]
    } else if j_hat == const1 {
        [1, 1]
    } else {
        [0, 1] // γ_H(ξ_H) = ξ_H
    };
    (
        j_hat,
        DeterministicStrategy {
            gamma_b: [0, 0],
            gamma_h,
        },
    )
}
