//! The no-signalling polytope for the binary two-agent setting: constraint
//! checking, the 24-vertex catalog, and the optimum by vertex enumeration.
//!
//! The catalog follows Barrett et al.'s enumeration: 16 local vertices
//! (the deterministic strategies) and 8 nonlocal box vertices.

use crate::classical::{to_table, DeterministicStrategy};
use crate::problem::{expected_cost, DecisionProblem, StrategyTable};

/// Label of one of the 24 vertices of the binary no-signalling polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsVertexId {
    /// u_B = α·ξ_B ⊕ β, u_H = η·ξ_H ⊕ δ.
    Local { alpha: u8, eta: u8, beta: u8, delta: u8 },
    /// Mass 1/2 on the two action pairs with
    /// u_B ⊕ u_H = ξ_B·ξ_H ⊕ α·ξ_B ⊕ β·ξ_H ⊕ δ.
    Nonlocal { alpha: u8, beta: u8, delta: u8 },
}

/// All 24 vertices: locals first, then nonlocals, lexicographic labels.
pub fn all_vertices() -> Vec<NsVertexId> {
    let mut out = Vec::with_capacity(24);
    for code in 0u8..16 {
        out.push(NsVertexId::Local {
            alpha: code >> 3 & 1,
            eta: code >> 2 & 1,
            beta: code >> 1 & 1,
            delta: code & 1,
        });
    }
    for code in 0u8..8 {
        out.push(NsVertexId::Nonlocal {
            alpha: code >> 2 & 1,
            beta: code >> 1 & 1,
            delta: code & 1,
        });
    }
    out
}

/// The occupation-measure table of a catalog vertex. Entries are exactly
/// 0, 1/2, or 1.
pub fn vertex_table(id: NsVertexId) -> StrategyTable {
    match id {
        NsVertexId::Local {
            alpha,
            eta,
            beta,
            delta,
        } => to_table(&DeterministicStrategy {
            gamma_b: [beta, alpha ^ beta],
            gamma_h: [delta, eta ^ delta],
        }),
        NsVertexId::Nonlocal { alpha, beta, delta } => {
            StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
                let target = (xi_b & xi_h) ^ (alpha & xi_b) ^ (beta & xi_h) ^ delta;
                if u_b ^ u_h == target {
                    0.5
                } else {
                    0.0
                }
            })
        }
    }
}

/// True iff both marginal-equality families hold within `tol`: each agent's
/// conditional action marginal must not depend on the other agent's
/// observation.
pub fn check_no_signalling(q: &StrategyTable, tol: f64) -> bool {
    for u in 0..2u8 {
        for xi_own in 0..2u8 {
            // Agent B's marginal across ξ_H.
            let m = |xi_h: u8| q.get(u, 0, xi_own, xi_h) + q.get(u, 1, xi_own, xi_h);
            if (m(0) - m(1)).abs() > tol {
                return false;
            }
            // Agent H's marginal across ξ_B.
            let m = |xi_b: u8| q.get(0, u, xi_b, xi_own) + q.get(1, u, xi_b, xi_own);
            if (m(0) - m(1)).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Exact minimum of the expected cost over all 24 vertex tables; ties broken
/// by enumeration order.
pub fn ns_optimum(d: &DecisionProblem) -> (f64, NsVertexId) {
    let mut best: Option<(f64, NsVertexId)> = None;
    for id in all_vertices() {
        let cost = expected_cost(&vertex_table(id), d).expect("vertex tables are valid");
        match best {
            Some((c, _)) if cost >= c => {}
            _ => best = Some((cost, id)),
        }
    }
    best.expect("24 vertices enumerated")
}
