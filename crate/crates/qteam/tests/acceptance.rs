//! End-to-end acceptance suite. Each test covers one criterion, prints a
//! single pass/fail line (visible with `--nocapture`), and fails on any
//! violated bound. All tolerances are pinned here.

use std::time::{Duration, Instant};

use qteam::classical::{
    closed_form_optimum, deterministic_optimum, mixture_table, DeterministicStrategy, LocalMixture,
};
use qteam::nosignalling::{check_no_signalling, ns_optimum, NsVertexId};
use qteam::problem::{expected_cost, DecisionProblem, StrategyTable};
use qteam::quantum::{
    advantage_strategy, bell_state, direct_sum_mix, empirical_table, projector_family,
    strategy_table, Complex64, ComplexMatrix, DensityMatrix, MeasurementOrder, PovmElement,
    ProjectorParams, QuantumStrategy,
};
use qteam::search::{quantum_optimum, SearchConfig};
use qteam::sweep::{run_sweep, SweepAxis, SweepSpec};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn d_star() -> DecisionProblem {
    DecisionProblem::new(0.8, 0.8, 1.0, 3.0).unwrap()
}

/// Prints the one-line verdict and fails the test on a violation.
fn report(criterion: usize, name: &str, passed: bool, detail: &str, elapsed: Duration) {
    let status = if passed { "PASS" } else { "FAIL" };
    println!("criterion {criterion} [{status}] {name}: {detail} ({elapsed:.2?})");
    assert!(passed, "criterion {criterion} failed: {detail}");
}

#[test]
fn criterion_1_classical_optimum() {
    let d = d_star();
    closed_form_optimum(&d); // warm up
    let start = Instant::now();
    let (closed, _) = closed_form_optimum(&d);
    let (brute, _) = deterministic_optimum(&d);
    let elapsed = start.elapsed();
    let passed = (closed - (-8.0 / 5.0)).abs() <= 1e-12
        && (brute - closed).abs() <= 1e-12
        && elapsed < Duration::from_millis(1);
    report(
        1,
        "classical optimum -8/5, closed form = brute force",
        passed,
        &format!("closed {closed}, brute {brute}"),
        elapsed,
    );
}

#[test]
fn criterion_2_ns_optimum() {
    let d = d_star();
    ns_optimum(&d); // warm up
    let start = Instant::now();
    let (cost, vertex) = ns_optimum(&d);
    let elapsed = start.elapsed();
    let passed = (cost - (-44.0 / 25.0)).abs() <= 1e-12
        && matches!(vertex, NsVertexId::Nonlocal { .. })
        && elapsed < Duration::from_millis(1);
    report(
        2,
        "no-signalling optimum -44/25 at a nonlocal vertex",
        passed,
        &format!("cost {cost}, vertex {vertex:?}"),
        elapsed,
    );
}

#[test]
fn criterion_3_reference_table() {
    let s = advantage_strategy();
    strategy_table(&s).unwrap(); // warm up
    let start = Instant::now();
    let table = strategy_table(&s).unwrap();
    let elapsed = start.elapsed();
    // Exact entries: {3/8, 1/8} patterns at mixed observations, {0, 1/2}
    // at (1,1).
    let xor0 = [[0.75, 0.25], [0.25, 0.0]];
    let expected = StrategyTable::from_fn(|u_b, u_h, xi_b, xi_h| {
        let p = xor0[xi_b as usize][xi_h as usize];
        if u_b == u_h {
            p / 2.0
        } else {
            (1.0 - p) / 2.0
        }
    });
    let diff = table.max_abs_diff(&expected);
    let passed = diff <= 1e-9 && elapsed < Duration::from_millis(1);
    report(
        3,
        "reference strategy reproduces all 16 table entries",
        passed,
        &format!("max entry deviation {diff:e}"),
        elapsed,
    );
}

#[test]
fn criterion_4_quantum_advantage() {
    let d = d_star();
    let start = Instant::now();
    let cost = expected_cost(&strategy_table(&advantage_strategy()).unwrap(), &d).unwrap();
    let (searched, _) = quantum_optimum(&d, &SearchConfig::default()).unwrap();
    let elapsed = start.elapsed();
    let passed = (cost - (-323.0 / 200.0)).abs() <= 1e-9
        && cost < -8.0 / 5.0
        && searched <= -323.0 / 200.0 + 1e-6
        && elapsed < Duration::from_secs(30);
    report(
        4,
        "reference cost -323/200 beats classical; search attains it",
        passed,
        &format!("reference {cost}, search {searched}"),
        elapsed,
    );
}

#[test]
fn criterion_5_equal_weights_no_advantage() {
    let start = Instant::now();
    let mut worst_ns = 0.0f64;
    let mut worst_q = 0.0f64;
    for i in 0..=10 {
        let lambda = (10 + i) as f64 / 20.0;
        let d = DecisionProblem::new(lambda, lambda, 1.0, 1.0).unwrap();
        let (classical, _) = closed_form_optimum(&d);
        let (ns, _) = ns_optimum(&d);
        let (quantum, _) = quantum_optimum(&d, &SearchConfig::default()).unwrap();
        worst_ns = worst_ns.max((ns - classical).abs());
        worst_q = worst_q.max((quantum - classical).abs());
    }
    let elapsed = start.elapsed();
    let passed = worst_ns <= 1e-9 && worst_q <= 1e-6 && elapsed < Duration::from_secs(300);
    report(
        5,
        "equal cost weights admit no advantage across the lambda grid",
        passed,
        &format!("max |ns-classical| {worst_ns:e}, max |quantum-classical| {worst_q:e}"),
        elapsed,
    );
}

fn random_state(rng: &mut (impl Rng + ?Sized), dim: usize) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm: f64 = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    for x in &mut v {
        *x /= norm;
    }
    v
}

fn random_qubit_strategy(rng: &mut impl Rng) -> QuantumStrategy {
    let pair = |rng: &mut dyn rand::RngCore| {
        let v = random_state(rng, 2);
        let p0 = PovmElement::Proj(ComplexMatrix::outer(&v));
        let p1 = p0.complement();
        [p0, p1]
    };
    QuantumStrategy {
        dim_b: 2,
        dim_h: 2,
        rho: DensityMatrix::pure(&random_state(rng, 4)).unwrap(),
        povm_b: [pair(rng), pair(rng)],
        povm_h: [pair(rng), pair(rng)],
    }
}

fn random_problem(rng: &mut impl Rng) -> DecisionProblem {
    DecisionProblem::new(
        rng.gen_range(0.5..=1.0),
        rng.gen_range(0.5..=1.0),
        rng.gen_range(0.0..5.0),
        rng.gen_range(0.0..5.0),
    )
    .unwrap()
}

fn random_mixture(rng: &mut impl Rng) -> LocalMixture {
    let n = rng.gen_range(1..=32);
    let parts: Vec<(f64, DeterministicStrategy)> = (0..n)
        .map(|_| {
            let rank = rng.gen_range(0..16u8);
            let s = DeterministicStrategy::all().nth(rank as usize).unwrap();
            (rng.gen_range(0.0..1.0f64), s)
        })
        .collect();
    let total: f64 = parts.iter().map(|(w, _)| w).sum();
    LocalMixture::from_deterministic(
        &parts
            .into_iter()
            .map(|(w, s)| (w / total, s))
            .collect::<Vec<_>>(),
    )
}

#[test]
fn criterion_6_property_suite() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACC6);

    // (a) random quantum strategies never signal.
    let mut ok_a = true;
    for _ in 0..500 {
        let t = strategy_table(&random_qubit_strategy(&mut rng)).unwrap();
        ok_a &= check_no_signalling(&t, 1e-8);
    }

    // (b) closed form equals brute force on random problems.
    let mut ok_b = true;
    for _ in 0..1000 {
        let d = random_problem(&mut rng);
        let (closed, _) = closed_form_optimum(&d);
        let (brute, _) = deterministic_optimum(&d);
        ok_b &= (closed - brute).abs() <= 1e-9;
    }

    // (c) local mixtures never beat the classical optimum.
    let mut ok_c = true;
    for _ in 0..200 {
        let d = random_problem(&mut rng);
        let t = mixture_table(&random_mixture(&mut rng)).unwrap();
        let (opt, _) = closed_form_optimum(&d);
        ok_c &= expected_cost(&t, &d).unwrap() >= opt - 1e-9;
    }

    // (d) direct-sum mixing is linear in the occupation measures.
    let mut ok_d = true;
    for _ in 0..100 {
        let s1 = random_qubit_strategy(&mut rng);
        let s2 = random_qubit_strategy(&mut rng);
        let theta: f64 = rng.gen_range(0.0..=1.0);
        let mixed = strategy_table(&direct_sum_mix(&s1, &s2, theta)).unwrap();
        let expected = strategy_table(&s1)
            .unwrap()
            .mix(&strategy_table(&s2).unwrap(), theta);
        ok_d &= mixed.max_abs_diff(&expected) <= 1e-9;
    }

    // (e) the trace closed form holds on random projector parameters.
    let mut ok_e = true;
    let rho = bell_state();
    for _ in 0..100 {
        let (a, a2) = (rng.gen_range(0.1..10.0), rng.gen_range(0.1..10.0));
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let theta2 = rng.gen_range(0.0..std::f64::consts::TAU);
        let p = projector_family(ProjectorParams::from_diagonal(a, theta)).unwrap();
        let p2 = projector_family(ProjectorParams::from_diagonal(a2, theta2)).unwrap();
        let lhs = p.matrix().kron(&p2.matrix()).mul(rho.mat()).trace();
        let (mu, b) = ((1.0 + a * a) / a, 1.0 / a);
        let (mu2, b2) = ((1.0 + a2 * a2) / a2, 1.0 / a2);
        let rhs = ((a * a2 + b * b2) / 2.0 + (theta + theta2).cos()) / (mu * mu2);
        ok_e &= (lhs.re - rhs).abs() <= 1e-9 && lhs.im.abs() <= 1e-9;
    }

    let elapsed = start.elapsed();
    let passed =
        ok_a && ok_b && ok_c && ok_d && ok_e && elapsed < Duration::from_secs(120);
    report(
        6,
        "property suite",
        passed,
        &format!(
            "no-signalling {ok_a}, closed-vs-brute {ok_b}, mixtures {ok_c}, direct-sum {ok_d}, trace form {ok_e}"
        ),
        elapsed,
    );
}

#[test]
fn criterion_7_monte_carlo_physics() {
    let start = Instant::now();
    let s = advantage_strategy();
    let exact = strategy_table(&s).unwrap();
    let mut worst = 0.0f64;
    for order in [MeasurementOrder::BFirst, MeasurementOrder::HFirst] {
        let empirical = empirical_table(&s, 1_000_000, order, 0x51D).unwrap();
        for xi_b in 0..2u8 {
            for xi_h in 0..2u8 {
                worst = worst.max(exact.tv_distance_at(&empirical, xi_b, xi_h));
            }
        }
    }
    let elapsed = start.elapsed();
    let passed = worst <= 0.005 && elapsed < Duration::from_secs(60);
    report(
        7,
        "sequential sampling concentrates on the reference table",
        passed,
        &format!("worst per-pair total variation {worst:e} over both orders"),
        elapsed,
    );
}

#[test]
fn criterion_8_sweep_shape() {
    let start = Instant::now();
    let fixed = d_star();
    let search = SearchConfig::default();

    let lambda_sweep = run_sweep(&SweepSpec {
        axis: SweepAxis::LambdaBoth,
        from: 0.5,
        to: 1.0,
        steps: 11,
        fixed,
        search,
    })
    .unwrap();
    let at = |records: &[qteam::sweep::SweepRecord], p: f64| {
        records
            .iter()
            .find(|r| (r.param - p).abs() < 1e-9)
            .copied()
            .unwrap()
    };
    let lam_low = at(&lambda_sweep, 0.5).adv_quantum;
    let lam_high = at(&lambda_sweep, 0.8).adv_quantum;

    let chi_sweep = run_sweep(&SweepSpec {
        axis: SweepAxis::Chi1,
        from: 0.5,
        to: 3.0,
        steps: 6,
        fixed,
        search,
    })
    .unwrap();
    let chi_eq = at(&chi_sweep, 1.0).adv_quantum;
    let chi_asym = at(&chi_sweep, 3.0).adv_quantum;

    let elapsed = start.elapsed();
    let passed = lam_low <= 1e-6
        && lam_high > 1e-3
        && chi_eq <= 1e-6
        && chi_asym > 1e-3
        && elapsed < Duration::from_secs(600);
    report(
        8,
        "sweeps show the advantage window",
        passed,
        &format!(
            "adv(lambda=0.5) {lam_low:e}, adv(lambda=0.8) {lam_high:e}, adv(chi1=1) {chi_eq:e}, adv(chi1=3) {chi_asym:e}"
        ),
        elapsed,
    );
}
