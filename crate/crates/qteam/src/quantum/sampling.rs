//! Sequential sampling of joint actions: the first agent measures, the
//! shared state collapses, the second agent measures the collapsed state.
//! The induced joint law does not depend on who measures first.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::matrix::ComplexMatrix;
use super::strategy::QuantumStrategy;
use crate::problem::StrategyTable;
use crate::{Error, Result};

/// Branch probabilities below this threshold are treated as zero; no
/// collapse is attempted on them.
pub const COLLAPSE_TOL: f64 = 1e-12;

/// Which agent measures first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeasurementOrder {
    BFirst,
    HFirst,
}

/// Branch law of one observation pair: the first agent's outcome marginal
/// and the second agent's conditional given each surviving branch.
struct SequentialLaw {
    p_first: [f64; 2],
    p_cond: [[f64; 2]; 2],
}

impl SequentialLaw {
    /// First index in the joint is always agent B's action.
    #[cfg(test)]
    fn joint(&self, order: MeasurementOrder) -> [[f64; 2]; 2] {
        let mut out = [[0.0; 2]; 2];
        for u1 in 0..2 {
            for u2 in 0..2 {
                let p = self.p_first[u1] * self.p_cond[u1][u2];
                match order {
                    MeasurementOrder::BFirst => out[u1][u2] = p,
                    MeasurementOrder::HFirst => out[u2][u1] = p,
                }
            }
        }
        out
    }
}

fn build_law(
    s: &QuantumStrategy,
    xi_b: u8,
    xi_h: u8,
    order: MeasurementOrder,
) -> Result<SequentialLaw> {
    // The first agent's projector acts on its own factor only.
    let extend = |u: u8| match order {
        MeasurementOrder::BFirst => s
            .povm_b(xi_b, u)
            .matrix()
            .kron(&ComplexMatrix::identity(s.dim_h)),
        MeasurementOrder::HFirst => ComplexMatrix::identity(s.dim_b)
            .kron(&s.povm_h(xi_h, u).matrix()),
    };
    let second = |u: u8| match order {
        MeasurementOrder::BFirst => ComplexMatrix::identity(s.dim_b)
            .kron(&s.povm_h(xi_h, u).matrix()),
        MeasurementOrder::HFirst => s
            .povm_b(xi_b, u)
            .matrix()
            .kron(&ComplexMatrix::identity(s.dim_h)),
    };

    let mut p_first = [0.0; 2];
    let mut p_cond = [[0.0; 2]; 2];
    for u1 in 0..2u8 {
        let p_ext = extend(u1);
        let p = p_ext.mul(s.rho.mat()).trace();
        if p.im.abs() > 1e-9 {
            return Err(Error::NumericalInconsistency(format!(
                "imaginary branch probability {:e}",
                p.im
            )));
        }
        let p = p.re.max(0.0);
        if p < COLLAPSE_TOL {
            continue;
        }
        p_first[u1 as usize] = p;
        // Collapse: ρ' = P ρ P / p, then measure the second agent on ρ'.
        let collapsed = p_ext
            .mul(s.rho.mat())
            .mul(&p_ext)
            .scale(num_complex::Complex64::new(1.0 / p, 0.0));
        for u2 in 0..2u8 {
            let q = collapsed.mul(&second(u2)).trace().re.max(0.0);
            p_cond[u1 as usize][u2 as usize] = q;
        }
    }
    let mass: f64 = p_first.iter().sum();
    if mass < COLLAPSE_TOL {
        return Err(Error::DegenerateCollapse(mass));
    }
    Ok(SequentialLaw { p_first, p_cond })
}

fn draw(law: &SequentialLaw, rng: &mut impl Rng) -> (u8, u8) {
    let u1 = if rng.gen::<f64>() < law.p_first[0] { 0 } else { 1 };
    let cond = law.p_cond[u1 as usize];
    let u2 = if rng.gen::<f64>() * (cond[0] + cond[1]) < cond[0] {
        0
    } else {
        1
    };
    (u1, u2)
}

/// Samples one joint action pair (u_B, u_H) for the given observations by
/// sequential measurement. Deterministic in `seed`.
pub fn sample_sequential(
    s: &QuantumStrategy,
    xi_b: u8,
    xi_h: u8,
    order: MeasurementOrder,
    seed: u64,
) -> Result<(u8, u8)> {
    let law = build_law(s, xi_b, xi_h, order)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2) = draw(&law, &mut rng);
    Ok(match order {
        MeasurementOrder::BFirst => (u1, u2),
        MeasurementOrder::HFirst => (u2, u1),
    })
}

/// Empirical occupation-measure table from `n` sequential samples per
/// observation pair. The branch law per pair is computed once; sampling
/// runs over the four pairs. Deterministic in `seed`.
pub fn empirical_table(
    s: &QuantumStrategy,
    n: u64,
    order: MeasurementOrder,
    seed: u64,
) -> Result<StrategyTable> {
    if n == 0 {
        return Err(Error::InvalidSpec("sample count must be positive".into()));
    }
    let pairs = [(0u8, 0u8), (0, 1), (1, 0), (1, 1)];

    let tally_pair = |(idx, &(xi_b, xi_h)): (usize, &(u8, u8))| -> Result<[[u64; 2]; 2]> {
        let law = build_law(s, xi_b, xi_h, order)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (0x9e3779b97f4a7c15u64.wrapping_mul(idx as u64 + 1)));
        let mut counts = [[0u64; 2]; 2];
        for _ in 0..n {
            let (u1, u2) = draw(&law, &mut rng);
            let (u_b, u_h) = match order {
                MeasurementOrder::BFirst => (u1, u2),
                MeasurementOrder::HFirst => (u2, u1),
            };
            counts[u_b as usize][u_h as usize] += 1;
        }
        Ok(counts)
    };

    #[cfg(feature = "parallel")]
    let tallies: Vec<Result<[[u64; 2]; 2]>> = {
        use rayon::prelude::*;
        pairs.par_iter().enumerate().map(tally_pair).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let tallies: Vec<Result<[[u64; 2]; 2]>> = pairs.iter().enumerate().map(tally_pair).collect();

    let mut per_pair = Vec::with_capacity(4);
    for t in tallies {
        per_pair.push(t?);
    }
    Ok(StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        let counts = per_pair[(xi_b * 2 + xi_h) as usize];
        counts[u_b as usize][u_h as usize] as f64 / n as f64
    }))
}
