//! Randomized invariants of the cost functional and the table algebra.

use proptest::prelude::*;

use qteam::classical::{to_table, DeterministicStrategy};
use qteam::problem::{expected_cost, joint_prior, DecisionProblem, StrategyTable};

fn arb_problem() -> impl Strategy<Value = DecisionProblem> {
    (0.5..=1.0f64, 0.5..=1.0f64, 0.0..5.0f64, 0.0..5.0f64)
        .prop_map(|(lb, lh, c0, c1)| DecisionProblem::new(lb, lh, c0, c1).unwrap())
}

/// Row-normalized nonnegative tables.
fn arb_table() -> impl Strategy<Value = StrategyTable> {
    proptest::array::uniform4(proptest::array::uniform4(0.0..1.0f64)).prop_map(|raw| {
        StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
            let row = raw[(xi_b * 2 + xi_h) as usize];
            let sum: f64 = row.iter().sum::<f64>().max(1e-9);
            row[(u_b * 2 + u_h) as usize] / sum
        })
    })
}

proptest! {
    #[test]
    fn prior_is_a_distribution(d in arb_problem()) {
        let prior = joint_prior(&d);
        let mut total = 0.0;
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                for xi_w in 0..2u8 {
                    let p = prior.get(xi_b, xi_h, xi_w);
                    prop_assert!(p >= 0.0);
                    total += p;
                }
            }
        }
        prop_assert!((total - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn expected_cost_is_bounded_by_the_weights(d in arb_problem(), q in arb_table()) {
        let j = expected_cost(&q, &d).unwrap();
        let bound = d.chi(0).max(d.chi(1));
        prop_assert!(j <= 1e-12);
        prop_assert!(j >= -bound - 1e-12);
    }

    #[test]
    fn expected_cost_is_affine_in_the_table(
        d in arb_problem(),
        q1 in arb_table(),
        q2 in arb_table(),
        alpha in 0.0..=1.0f64,
    ) {
        let mixed = expected_cost(&q1.mix(&q2, alpha), &d).unwrap();
        let parts = alpha * expected_cost(&q1, &d).unwrap()
            + (1.0 - alpha) * expected_cost(&q2, &d).unwrap();
        prop_assert!((mixed - parts).abs() <= 1e-12);
    }

    #[test]
    fn deterministic_tables_beat_nothing_below_the_optimum(
        d in arb_problem(),
        rank in 0..16usize,
    ) {
        let s = DeterministicStrategy::all().nth(rank).unwrap();
        let j = expected_cost(&to_table(&s), &d).unwrap();
        let (opt, _) = qteam::classical::closed_form_optimum(&d);
        prop_assert!(j >= opt - 1e-12);
    }

    #[test]
    fn agent_swap_preserves_the_optimum(d in arb_problem()) {
        let (a, _) = qteam::classical::closed_form_optimum(&d);
        let (b, _) = qteam::classical::closed_form_optimum(&d.swap_agents());
        prop_assert!((a - b).abs() <= 1e-12);
    }
}
