//! Quantum strategies: a shared state plus per-agent, per-observation
//! projective POVMs, mapped to occupation-measure tables by the trace rule.

use num_complex::Complex64;
use std::f64::consts::PI;

use super::matrix::ComplexMatrix;
use super::state::{bell_state, projector_family, DensityMatrix, PovmElement, ProjectorParams, QUANTUM_TOL};
use crate::classical::DeterministicStrategy;
use crate::problem::StrategyTable;
use crate::{Error, Result};

/// A two-agent quantum strategy. POVMs are indexed `[ξ][u]`.
#[derive(Debug, Clone)]
pub struct QuantumStrategy {
    pub dim_b: usize,
    pub dim_h: usize,
    pub rho: DensityMatrix,
    pub povm_b: [[PovmElement; 2]; 2],
    pub povm_h: [[PovmElement; 2]; 2],
}

impl QuantumStrategy {
    pub fn povm_b(&self, xi: u8, u: u8) -> &PovmElement {
        &self.povm_b[xi as usize][u as usize]
    }

    pub fn povm_h(&self, xi: u8, u: u8) -> &PovmElement {
        &self.povm_h[xi as usize][u as usize]
    }
}

/// Tr(ρ·(A ⊗ B)) without materializing the Kronecker product. `rho` lives
/// on the composite space with row index b·dim_h + h.
pub(crate) fn trace_with_kron(
    rho: &ComplexMatrix,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
) -> Complex64 {
    let dh = b.rows();
    let db = a.rows();
    let mut sum = Complex64::ZERO;
    for i in 0..db {
        for j in 0..db {
            let aji = a[(j, i)];
            if aji == Complex64::ZERO {
                continue;
            }
            for k in 0..dh {
                for l in 0..dh {
                    sum += rho[(i * dh + k, j * dh + l)] * aji * b[(l, k)];
                }
            }
        }
    }
    sum
}

/// The occupation measure Q(u_B, u_H | ξ_B, ξ_H) = Tr(ρ·(P^B ⊗ P^H)).
///
/// Assumes the strategy is valid (see [`validate_quantum_strategy`]); still
/// rejects results whose imaginary residue or negativity exceeds the
/// numerical tolerance.
pub fn strategy_table(s: &QuantumStrategy) -> Result<StrategyTable> {
    let mut entries = [[[[0.0f64; 2]; 2]; 2]; 2];
    for xi_b in 0..2usize {
        for xi_h in 0..2usize {
            for u_b in 0..2usize {
                for u_h in 0..2usize {
                    let p = trace_with_kron(
                        s.rho.mat(),
                        &s.povm_b[xi_b][u_b].matrix(),
                        &s.povm_h[xi_h][u_h].matrix(),
                    );
                    if p.im.abs() > QUANTUM_TOL {
                        return Err(Error::NumericalInconsistency(format!(
                            "imaginary residue {:e} in occupation measure",
                            p.im
                        )));
                    }
                    if p.re < -QUANTUM_TOL {
                        return Err(Error::NumericalInconsistency(format!(
                            "negative occupation measure {:e}",
                            p.re
                        )));
                    }
                    entries[u_b][u_h][xi_b][xi_h] = p.re.max(0.0);
                }
            }
        }
    }
    Ok(StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        entries[u_b as usize][u_h as usize][xi_b as usize][xi_h as usize]
    }))
}

/// Checks state invariants, per-element idempotence, and per-observation
/// completeness P₀ + P₁ = I; reports the first failure.
pub fn validate_quantum_strategy(s: &QuantumStrategy) -> Result<()> {
    if s.rho.dim() != s.dim_b * s.dim_h {
        return Err(Error::InvalidQuantumStrategy(format!(
            "state dimension {} does not match {}·{}",
            s.rho.dim(),
            s.dim_b,
            s.dim_h
        )));
    }
    for (agent, dim, povm) in [("B", s.dim_b, &s.povm_b), ("H", s.dim_h, &s.povm_h)] {
        for xi in 0..2usize {
            for u in 0..2usize {
                let element = &povm[xi][u];
                if element.dim() != dim {
                    return Err(Error::InvalidQuantumStrategy(format!(
                        "agent {agent} POVM element (ξ={xi}, u={u}) has dimension {}",
                        element.dim()
                    )));
                }
                element.validate().map_err(|e| {
                    Error::InvalidQuantumStrategy(format!(
                        "agent {agent} POVM element (ξ={xi}, u={u}): {e}"
                    ))
                })?;
            }
            let sum = povm[xi][0].matrix().add(&povm[xi][1].matrix());
            if sum.max_abs_diff(&ComplexMatrix::identity(dim)) > QUANTUM_TOL {
                return Err(Error::InvalidQuantumStrategy(format!(
                    "agent {agent} POVM at ξ={xi} does not sum to identity"
                )));
            }
        }
    }
    Ok(())
}

/// Embeds a deterministic strategy on one-dimensional spaces: ρ = (1) and
/// each outcome projector is Identity or Zero.
pub fn embed_deterministic(s: &DeterministicStrategy) -> QuantumStrategy {
    let element = |gamma: [u8; 2], xi: usize, u: usize| {
        if gamma[xi] as usize == u {
            PovmElement::Identity(1)
        } else {
            PovmElement::Zero(1)
        }
    };
    let povm = |gamma: [u8; 2]| {
        [0, 1].map(|xi| [0, 1].map(|u| element(gamma, xi, u)))
    };
    QuantumStrategy {
        dim_b: 1,
        dim_h: 1,
        rho: DensityMatrix::new(ComplexMatrix::identity(1)).expect("(1) is a density matrix"),
        povm_b: povm(s.gamma_b),
        povm_h: povm(s.gamma_h),
    }
}

/// Convex mixture of two strategies by direct sums: per-agent spaces
/// concatenate, ρ becomes the weighted block embedding on the diagonal
/// subspace, and POVM elements sum block-diagonally. The occupation measure
/// of the result is θ·Q₁ + (1−θ)·Q₂.
pub fn direct_sum_mix(s1: &QuantumStrategy, s2: &QuantumStrategy, theta: f64) -> QuantumStrategy {
    assert!((0.0..=1.0).contains(&theta));
    let dim_b = s1.dim_b + s2.dim_b;
    let dim_h = s1.dim_h + s2.dim_h;
    let mut rho = ComplexMatrix::zeros(dim_b * dim_h, dim_b * dim_h);
    let mut place = |mat: &ComplexMatrix, weight: f64, off_b: usize, off_h: usize, dh: usize| {
        let db = mat.rows() / dh;
        for bi in 0..db {
            for hi in 0..dh {
                for bj in 0..db {
                    for hj in 0..dh {
                        let row = (bi + off_b) * dim_h + hi + off_h;
                        let col = (bj + off_b) * dim_h + hj + off_h;
                        rho[(row, col)] = mat[(bi * dh + hi, bj * dh + hj)] * weight;
                    }
                }
            }
        }
    };
    place(s1.rho.mat(), theta, 0, 0, s1.dim_h);
    place(s2.rho.mat(), 1.0 - theta, s1.dim_b, s1.dim_h, s2.dim_h);

    let sum_povm = |p1: &[[PovmElement; 2]; 2], p2: &[[PovmElement; 2]; 2]| {
        [0, 1].map(|xi| [0, 1].map(|u| p1[xi][u].direct_sum(&p2[xi][u])))
    };
    QuantumStrategy {
        dim_b,
        dim_h,
        rho: DensityMatrix::new(rho).expect("weighted block embedding is a density matrix"),
        povm_b: sum_povm(&s1.povm_b, &s2.povm_b),
        povm_h: sum_povm(&s1.povm_h, &s2.povm_h),
    }
}

/// The explicit Bell-state strategy whose occupation measures are
/// {3/8, 1/8, 1/2, 0} and whose expected cost at (0.8, 0.8, 1, 3) is
/// −323/200, strictly below the classical optimum −8/5.
pub fn advantage_strategy() -> QuantumStrategy {
    let sqrt3 = 3.0f64.sqrt();
    let mu = 4.0 / sqrt3;
    let p = |a: f64, b: f64, theta: f64| {
        projector_family(ProjectorParams::Finite { mu, a, b, theta })
            .expect("parameters satisfy the projector constraints")
    };
    let b0 = projector_family(ProjectorParams::LimitUpper).unwrap();
    let b1 = p(sqrt3, 1.0 / sqrt3, PI / 2.0);
    // Agent H's phases enter conjugated (θ = 3π/2 becomes π/2) so the
    // occupation measure carries cos(θ_B − θ_H); this is the phase
    // convention under which the reference table holds.
    let h0 = p(sqrt3, 1.0 / sqrt3, PI / 2.0);
    let h1 = p(1.0 / sqrt3, sqrt3, PI / 2.0);
    let pair = |p0: PovmElement| {
        let p1 = p0.complement();
        [p0, p1]
    };
    QuantumStrategy {
        dim_b: 2,
        dim_h: 2,
        rho: bell_state(),
        povm_b: [pair(b0), pair(b1)],
        povm_h: [pair(h0), pair(h1)],
    }
}

/// The table of occupation measures attained by [`advantage_strategy`].
pub fn advantage_table() -> StrategyTable {
    // Entries from the strategy's correlation pattern: P(XOR = 0 | ξ) is
    // 3/4, 1/4, 1/4, 0 at ξ = (0,0), (0,1), (1,0), (1,1), split evenly.
    let xor0 = [[0.75, 0.25], [0.25, 0.0]];
    StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        let p_match = xor0[xi_b as usize][xi_h as usize];
        if u_b == u_h {
            p_match / 2.0
        } else {
            (1.0 - p_match) / 2.0
        }
    })
}
