//! Numerical optimization over Bell-state strategies with real rank-1
//! projectors, one measurement angle per agent and observation.
//!
//! For this ansatz the occupation measure has a closed form in the angle
//! differences, so the grid scan evaluates a trigonometric kernel instead of
//! the full trace rule. The equivalence is pinned by tests against the
//! matrix kernel.

use std::f64::consts::PI;

use crate::problem::{joint_prior, DecisionProblem, StrategyTable};
use crate::quantum::state::{bell_state, PovmElement};
use crate::quantum::strategy::QuantumStrategy;
use crate::quantum::ComplexMatrix;
use crate::{Error, Result};

/// Measurement angles (φ_B(0), φ_B(1), φ_H(0), φ_H(1)). Agent i on
/// observation ξ measures the projector onto (cos(φ/2), sin(φ/2)) for
/// action 0 and its complement for action 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleVector(pub [f64; 4]);

impl AngleVector {
    /// Angles reduced to [0, 2π).
    pub fn reduced(&self) -> AngleVector {
        AngleVector(self.0.map(|a| {
            let r = a.rem_euclid(2.0 * PI);
            if r == 2.0 * PI {
                0.0
            } else {
                r
            }
        }))
    }

    fn phi_b(&self, xi: u8) -> f64 {
        self.0[xi as usize]
    }

    fn phi_h(&self, xi: u8) -> f64 {
        self.0[2 + xi as usize]
    }

    /// The angle vectors with entries in {0, π}. Their XOR law is that of
    /// the 16 deterministic strategies, so they attain the same expected
    /// costs (individual-action marginals stay uniform under this ansatz).
    pub fn deterministic_corners() -> Vec<AngleVector> {
        (0u8..16)
            .map(|code| {
                AngleVector([3, 2, 1, 0].map(|bit| if code >> bit & 1 == 1 { PI } else { 0.0 }))
            })
            .collect()
    }
}

/// The full quantum strategy realized by an angle vector: Bell state plus
/// real rank-1 projectors.
pub fn angle_strategy(v: &AngleVector) -> QuantumStrategy {
    let proj = |phi: f64| {
        let vec = [
            num_complex::Complex64::new((phi / 2.0).cos(), 0.0),
            num_complex::Complex64::new((phi / 2.0).sin(), 0.0),
        ];
        let p0 = PovmElement::Proj(ComplexMatrix::outer(&vec));
        let p1 = p0.complement();
        [p0, p1]
    };
    QuantumStrategy {
        dim_b: 2,
        dim_h: 2,
        rho: bell_state(),
        povm_b: [proj(v.phi_b(0)), proj(v.phi_b(1))],
        povm_h: [proj(v.phi_h(0)), proj(v.phi_h(1))],
    }
}

/// Closed-form occupation measure of an angle vector: with
/// Δ = φ_B(ξ_B) − φ_H(ξ_H), equal actions carry cos²(Δ/2)/2 each and
/// unequal actions sin²(Δ/2)/2 each.
pub fn table_from_angles(v: &AngleVector) -> StrategyTable {
    StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        let delta = v.phi_b(xi_b) - v.phi_h(xi_h);
        if u_b == u_h {
            (delta / 2.0).cos().powi(2) / 2.0
        } else {
            (delta / 2.0).sin().powi(2) / 2.0
        }
    })
}

/// Expected-cost kernel of the angle ansatz for one problem:
/// J = base − Σ_ξ k(ξ)·cos(φ_B(ξ_B) − φ_H(ξ_H)).
struct CostKernel {
    base: f64,
    k: [[f64; 2]; 2],
}

impl CostKernel {
    fn new(d: &DecisionProblem) -> Self {
        // P(XOR = 0 | ξ) = (1 + cos Δ)/2, so the per-ξ contribution is
        // −(χ0 p0 + χ1 p1)/2 − cos Δ·(χ0 p0 − χ1 p1)/2 with
        // p_w = P(ξ, ξ_W = w).
        let prior = joint_prior(d);
        let mut base = 0.0;
        let mut k = [[0.0; 2]; 2];
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                let p0 = prior.get(xi_b, xi_h, 0) * d.chi(0);
                let p1 = prior.get(xi_b, xi_h, 1) * d.chi(1);
                base -= (p0 + p1) / 2.0;
                k[xi_b as usize][xi_h as usize] = (p0 - p1) / 2.0;
            }
        }
        Self { base, k }
    }

    fn eval(&self, v: &AngleVector) -> f64 {
        let mut total = self.base;
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                total -= self.k[xi_b as usize][xi_h as usize]
                    * (v.phi_b(xi_b) - v.phi_h(xi_h)).cos();
            }
        }
        total
    }
}

/// Expected cost of an angle vector, via the closed-form kernel.
pub fn quantum_value(v: &AngleVector, d: &DecisionProblem) -> f64 {
    CostKernel::new(d).eval(v)
}

/// Knobs for [`quantum_optimum`]: grid density per angle, number of grid
/// candidates kept for local refinement, and the refinement stop rule.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub grid_resolution: usize,
    pub restarts: usize,
    pub refine_tolerance: f64,
    pub max_refine_iters: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            grid_resolution: 32,
            restarts: 16,
            refine_tolerance: 1e-10,
            max_refine_iters: 500,
        }
    }
}

impl SearchConfig {
    // `!(x > 0)` also rejects NaN.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if self.grid_resolution < 2 {
            return Err(Error::InvalidSpec("grid resolution must be at least 2".into()));
        }
        if self.restarts == 0 || self.max_refine_iters == 0 {
            return Err(Error::InvalidSpec(
                "restarts and refinement iterations must be positive".into(),
            ));
        }
        if !(self.refine_tolerance > 0.0) {
            return Err(Error::InvalidSpec("refine tolerance must be positive".into()));
        }
        Ok(())
    }
}

/// Total order on candidates: cost first, then angles lexicographically.
/// Keeps serial and parallel reductions bit-identical.
fn candidate_cmp(a: &(f64, AngleVector), b: &(f64, AngleVector)) -> std::cmp::Ordering {
    a.0.total_cmp(&b.0)
        .then_with(|| a.1 .0.iter().zip(&b.1 .0).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal))
}

/// Keeps the `cap` smallest candidates in sorted order.
fn push_capped(top: &mut Vec<(f64, AngleVector)>, cand: (f64, AngleVector), cap: usize) {
    let pos = top.partition_point(|x| candidate_cmp(x, &cand).is_lt());
    if pos < cap {
        top.insert(pos, cand);
        top.truncate(cap);
    }
}

/// Scans one slab of the angle grid (fixed first angle) and returns its best
/// `cap` candidates.
fn scan_slab(kernel: &CostKernel, i0: usize, n: usize, cap: usize) -> Vec<(f64, AngleVector)> {
    let step = 2.0 * PI / n as f64;
    let mut top = Vec::with_capacity(cap + 1);
    for i1 in 0..n {
        for i2 in 0..n {
            for i3 in 0..n {
                let v = AngleVector([
                    i0 as f64 * step,
                    i1 as f64 * step,
                    i2 as f64 * step,
                    i3 as f64 * step,
                ]);
                push_capped(&mut top, (kernel.eval(&v), v), cap);
            }
        }
    }
    top
}

/// Nelder-Mead refinement of one starting point; returns the best vertex.
fn refine(kernel: &CostKernel, start: AngleVector, cfg: &SearchConfig) -> (f64, AngleVector) {
    const ALPHA: f64 = 1.0; // reflection
    const GAMMA: f64 = 2.0; // expansion
    const RHO: f64 = 0.5; // contraction
    const SIGMA: f64 = 0.5; // shrink

    let mut simplex: Vec<(f64, AngleVector)> = Vec::with_capacity(5);
    simplex.push((kernel.eval(&start), start));
    for i in 0..4 {
        let mut p = start;
        p.0[i] += 0.1;
        simplex.push((kernel.eval(&p), p));
    }

    for _ in 0..cfg.max_refine_iters {
        simplex.sort_by(candidate_cmp);
        let spread = simplex[4].0 - simplex[0].0;
        if spread.abs() < cfg.refine_tolerance {
            break;
        }
        let centroid = {
            let mut c = [0.0; 4];
            for (_, v) in &simplex[..4] {
                for (ci, vi) in c.iter_mut().zip(&v.0) {
                    *ci += vi / 4.0;
                }
            }
            c
        };
        let worst = simplex[4];
        let point = |t: f64| {
            let mut p = [0.0; 4];
            for i in 0..4 {
                p[i] = centroid[i] + t * (centroid[i] - worst.1 .0[i]);
            }
            AngleVector(p)
        };

        let reflected = point(ALPHA);
        let fr = kernel.eval(&reflected);
        if fr < simplex[0].0 {
            let expanded = point(GAMMA);
            let fe = kernel.eval(&expanded);
            simplex[4] = if fe < fr { (fe, expanded) } else { (fr, reflected) };
        } else if fr < simplex[3].0 {
            simplex[4] = (fr, reflected);
        } else {
            let contracted = if fr < worst.0 { point(RHO) } else { point(-RHO) };
            let fc = kernel.eval(&contracted);
            if fc < worst.0.min(fr) {
                simplex[4] = (fc, contracted);
            } else {
                // Shrink toward the best vertex.
                let best = simplex[0].1;
                for entry in &mut simplex[1..] {
                    for i in 0..4 {
                        entry.1 .0[i] = best.0[i] + SIGMA * (entry.1 .0[i] - best.0[i]);
                    }
                    entry.0 = kernel.eval(&entry.1);
                }
            }
        }
    }
    simplex.sort_by(candidate_cmp);
    simplex[0]
}

/// Best angle-ansatz strategy for a problem: a full grid scan keeps the top
/// candidates, the 16 deterministic corners are always added, and every
/// candidate is polished by Nelder-Mead. Deterministic for a fixed config;
/// the parallel and serial paths agree exactly.
pub fn quantum_optimum(d: &DecisionProblem, cfg: &SearchConfig) -> Result<(f64, AngleVector)> {
    cfg.validate()?;
    let kernel = CostKernel::new(d);
    let n = cfg.grid_resolution;
    let cap = cfg.restarts;

    #[cfg(feature = "parallel")]
    let slabs: Vec<Vec<(f64, AngleVector)>> = {
        use rayon::prelude::*;
        (0..n)
            .into_par_iter()
            .map(|i0| scan_slab(&kernel, i0, n, cap))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let slabs: Vec<Vec<(f64, AngleVector)>> =
        (0..n).map(|i0| scan_slab(&kernel, i0, n, cap)).collect();

    let mut candidates: Vec<(f64, AngleVector)> = Vec::new();
    for slab in slabs {
        for cand in slab {
            push_capped(&mut candidates, cand, cap);
        }
    }
    for corner in AngleVector::deterministic_corners() {
        candidates.push((kernel.eval(&corner), corner));
    }

    let mut best: Option<(f64, AngleVector)> = None;
    for (_, start) in candidates {
        let refined = refine(&kernel, start, cfg);
        match &best {
            Some(b) if candidate_cmp(b, &refined).is_le() => {}
            _ => best = Some(refined),
        }
    }
    let (cost, v) = best.expect("candidate set is nonempty");
    Ok((cost, v.reduced()))
}
