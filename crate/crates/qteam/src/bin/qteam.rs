//! Command-line front end: solve a single problem, run parameter sweeps to
//! CSV, simulate sequential measurements, or verify the golden values.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qteam::classical::closed_form_optimum;
use qteam::nosignalling::ns_optimum;
use qteam::problem::{expected_cost, DecisionProblem, StrategyTable};
use qteam::quantum::{advantage_strategy, empirical_table, strategy_table, MeasurementOrder};
use qteam::search::{quantum_optimum, SearchConfig};
use qteam::sweep::{golden_suite, run_sweep, write_csv_file, SweepAxis, SweepSpec};
use qteam::Error;

#[derive(Parser)]
#[command(name = "qteam", version, about = "Two-agent decentralized estimation solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    Classical,
    Ns,
    Quantum,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one decision problem in the selected strategy space(s).
    Solve {
        #[arg(long)]
        lambda_b: f64,
        #[arg(long)]
        lambda_h: f64,
        #[arg(long)]
        chi0: f64,
        #[arg(long)]
        chi1: f64,
        #[arg(long, value_enum, default_value_t = Space::All)]
        space: Space,
    },
    /// Sweep one parameter and write the optimal costs per point as CSV.
    Sweep {
        #[arg(long)]
        axis: SweepAxis,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: PathBuf,
        /// Off-axis value of λ_B.
        #[arg(long, default_value_t = 0.8)]
        lambda_b: f64,
        /// Off-axis value of λ_H.
        #[arg(long, default_value_t = 0.8)]
        lambda_h: f64,
        /// Off-axis value of χ(0).
        #[arg(long, default_value_t = 1.0)]
        chi0: f64,
        /// Off-axis value of χ(1).
        #[arg(long, default_value_t = 3.0)]
        chi1: f64,
        #[arg(long, default_value_t = SearchConfig::default().grid_resolution)]
        grid_resolution: usize,
        #[arg(long, default_value_t = SearchConfig::default().restarts)]
        restarts: usize,
    },
    /// Sample the reference entangled strategy sequentially and compare the
    /// empirical tables with the exact ones.
    Simulate {
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Reproduce the known exact values; exits nonzero on any mismatch.
    Verify,
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Solve {
            lambda_b,
            lambda_h,
            chi0,
            chi1,
            space,
        } => {
            let d = DecisionProblem::new(lambda_b, lambda_h, chi0, chi1)?;
            if matches!(space, Space::Classical | Space::All) {
                let (cost, s) = closed_form_optimum(&d);
                println!(
                    "classical  {cost:.12}  gamma_b={:?} gamma_h={:?}",
                    s.gamma_b, s.gamma_h
                );
            }
            if matches!(space, Space::Quantum | Space::All) {
                let (cost, v) = quantum_optimum(&d, &SearchConfig::default())?;
                println!("quantum    {cost:.12}  angles={:?}", v.0);
            }
            if matches!(space, Space::Ns | Space::All) {
                let (cost, vertex) = ns_optimum(&d);
                println!("ns         {cost:.12}  vertex={vertex:?}");
            }
            Ok(())
        }
        Command::Sweep {
            axis,
            from,
            to,
            steps,
            out,
            lambda_b,
            lambda_h,
            chi0,
            chi1,
            grid_resolution,
            restarts,
        } => {
            let spec = SweepSpec {
                axis,
                from,
                to,
                steps,
                fixed: DecisionProblem::new(lambda_b, lambda_h, chi0, chi1)?,
                search: SearchConfig {
                    grid_resolution,
                    restarts,
                    ..SearchConfig::default()
                },
            };
            let records = run_sweep(&spec)?;
            write_csv_file(&out, &records)?;
            println!("wrote {} records to {}", records.len(), out.display());
            Ok(())
        }
        Command::Simulate { samples, seed } => {
            let s = advantage_strategy();
            let exact = strategy_table(&s)?;
            for order in [MeasurementOrder::BFirst, MeasurementOrder::HFirst] {
                let empirical = empirical_table(&s, samples, order, seed)?;
                println!("measurement order {order:?}, {samples} samples per observation pair:");
                print_tables(&exact, &empirical);
                println!();
            }
            let d = DecisionProblem::new(0.8, 0.8, 1.0, 3.0)?;
            println!("exact expected cost at (0.8, 0.8, 1, 3): {:.12}", expected_cost(&exact, &d)?);
            Ok(())
        }
        Command::Verify => {
            let checks = golden_suite();
            let mut failures = 0;
            for c in &checks {
                let status = if c.passed { "PASS" } else { "FAIL" };
                println!("{status}  {}  ({})", c.name, c.detail);
                if !c.passed {
                    failures += 1;
                }
            }
            if failures > 0 {
                Err(Error::NumericalInconsistency(format!(
                    "{failures} of {} golden checks failed",
                    checks.len()
                )))
            } else {
                println!("all {} golden checks passed", checks.len());
                Ok(())
            }
        }
    }
}

fn print_tables(exact: &StrategyTable, empirical: &StrategyTable) {
    println!("  obs    action   exact         empirical     |diff|");
    for xi_b in 0..2u8 {
        for xi_h in 0..2u8 {
            for u_b in 0..2u8 {
                for u_h in 0..2u8 {
                    let e = exact.get(u_b, u_h, xi_b, xi_h);
                    let f = empirical.get(u_b, u_h, xi_b, xi_h);
                    println!(
                        "  ({xi_b},{xi_h})  ({u_b},{u_h})    {e:<12.9}  {f:<12.9}  {:.2e}",
                        (e - f).abs()
                    );
                }
            }
            println!(
                "  ({xi_b},{xi_h})  total variation {:.3e}",
                exact.tv_distance_at(empirical, xi_b, xi_h)
            );
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e @ (Error::InvalidProblem(_) | Error::InvalidSpec(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
