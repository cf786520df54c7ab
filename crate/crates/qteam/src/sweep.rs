//! Parameter sweeps over information quality and cost asymmetry, CSV
//! serialization of the results, and the golden verification suite behind
//! the CLI `verify` subcommand.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::str::FromStr;

use crate::classical::closed_form_optimum;
use crate::nosignalling::ns_optimum;
use crate::problem::DecisionProblem;
use crate::search::{quantum_optimum, SearchConfig};
use crate::{Error, Result};

/// Which problem parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    /// λ_B = λ_H = param.
    LambdaBoth,
    /// λ_H = param, λ_B from the fixed problem.
    LambdaH,
    /// χ(1) = param, everything else from the fixed problem.
    Chi1,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::LambdaBoth => "lambda-both",
            SweepAxis::LambdaH => "lambda-h",
            SweepAxis::Chi1 => "chi1",
        }
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda-both" => Ok(SweepAxis::LambdaBoth),
            "lambda-h" => Ok(SweepAxis::LambdaH),
            "chi1" => Ok(SweepAxis::Chi1),
            other => Err(Error::InvalidSpec(format!(
                "unknown axis {other:?}, expected lambda-both, lambda-h, or chi1"
            ))),
        }
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A sweep request: vary `axis` from `from` to `to` inclusive over `steps`
/// evenly spaced points, holding the remaining parameters at `fixed`.
#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub from: f64,
    pub to: f64,
    pub steps: usize,
    pub fixed: DecisionProblem,
    pub search: SearchConfig,
}

impl SweepSpec {
    // `!(a < b)` also rejects NaN endpoints.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    fn validate(&self) -> Result<()> {
        if !(self.from < self.to) {
            return Err(Error::InvalidSpec(format!(
                "need from < to, got {} and {}",
                self.from, self.to
            )));
        }
        if self.steps < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least 2 steps, got {}",
                self.steps
            )));
        }
        let range_ok = match self.axis {
            SweepAxis::LambdaBoth | SweepAxis::LambdaH => self.from >= 0.5 && self.to <= 1.0,
            SweepAxis::Chi1 => self.from >= 0.0 && self.to.is_finite(),
        };
        if !range_ok {
            return Err(Error::InvalidSpec(format!(
                "range [{}, {}] outside the validity of axis {}",
                self.from, self.to, self.axis
            )));
        }
        Ok(())
    }

    fn problem_at(&self, param: f64) -> Result<DecisionProblem> {
        let d = &self.fixed;
        match self.axis {
            SweepAxis::LambdaBoth => DecisionProblem::new(param, param, d.chi(0), d.chi(1)),
            SweepAxis::LambdaH => DecisionProblem::new(d.lambda_b(), param, d.chi(0), d.chi(1)),
            SweepAxis::Chi1 => DecisionProblem::new(d.lambda_b(), d.lambda_h(), d.chi(0), param),
        }
    }
}

/// One sweep grid point: optimal costs in the three strategy spaces and the
/// advantages over the classical value (clamped at 0 against roundoff).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub j_classical: f64,
    pub j_quantum: f64,
    pub j_ns: f64,
    pub adv_quantum: f64,
    pub adv_ns: f64,
}

fn solve_point(spec: &SweepSpec, param: f64) -> Result<SweepRecord> {
    let d = spec.problem_at(param)?;
    let (j_classical, _) = closed_form_optimum(&d);
    let (j_quantum, _) = quantum_optimum(&d, &spec.search)?;
    let (j_ns, _) = ns_optimum(&d);
    Ok(SweepRecord {
        param,
        j_classical,
        j_quantum,
        j_ns,
        adv_quantum: (j_classical - j_quantum).max(0.0),
        adv_ns: (j_classical - j_ns).max(0.0),
    })
}

/// Reads the parallelism cap from `QTEAM_THREADS` if set.
fn thread_cap() -> Result<Option<usize>> {
    match std::env::var("QTEAM_THREADS") {
        Ok(raw) => match raw.parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::InvalidSpec(format!(
                "QTEAM_THREADS must be a positive integer, got {raw:?}"
            ))),
        },
        Err(_) => Ok(None),
    }
}

/// Runs a sweep. Points are solved independently (in parallel when the
/// `parallel` feature is on, capped by `QTEAM_THREADS`); the output is
/// ordered by ascending parameter.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let step = (spec.to - spec.from) / (spec.steps - 1) as f64;
    let params: Vec<f64> = (0..spec.steps)
        .map(|i| {
            if i == spec.steps - 1 {
                spec.to
            } else {
                spec.from + i as f64 * step
            }
        })
        .collect();

    #[cfg(feature = "parallel")]
    let results: Vec<Result<SweepRecord>> = {
        use rayon::prelude::*;
        let solve_all = || params.par_iter().map(|&p| solve_point(spec, p)).collect();
        match thread_cap()? {
            Some(n) => rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidSpec(format!("thread pool: {e}")))?
                .install(solve_all),
            None => solve_all(),
        }
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Result<SweepRecord>> = {
        thread_cap()?; // still reject a malformed cap
        params.iter().map(|&p| solve_point(spec, p)).collect()
    };

    results.into_iter().collect()
}

/// CSV header shared by writer and reader.
pub const CSV_HEADER: &str = "param,j_classical,j_quantum,j_ns,adv_quantum,adv_ns";

fn format_value(x: f64) -> String {
    // 12 significant digits, '.' decimal separator.
    format!("{x:.11e}")
}

/// Writes records as CSV: fixed header, LF line endings, 12 significant
/// digits per value.
pub fn write_csv<W: Write>(out: &mut W, records: &[SweepRecord]) -> Result<()> {
    out.write_all(CSV_HEADER.as_bytes())?;
    out.write_all(b"\n")?;
    for r in records {
        let row = [
            r.param,
            r.j_classical,
            r.j_quantum,
            r.j_ns,
            r.adv_quantum,
            r.adv_ns,
        ]
        .map(format_value)
        .join(",");
        out.write_all(row.as_bytes())?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_csv_file(path: &Path, records: &[SweepRecord]) -> Result<()> {
    let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
    write_csv(&mut file, records)?;
    file.flush()?;
    Ok(())
}

/// Reads records back from CSV written by [`write_csv`].
pub fn read_csv<R: BufRead>(input: R) -> Result<Vec<SweepRecord>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedCsv("empty input".into()))??;
    if header.trim_end() != CSV_HEADER {
        return Err(Error::MalformedCsv(format!("unexpected header {header:?}")));
    }
    let mut records = Vec::new();
    for (lineno, line) in lines.enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 6 {
            return Err(Error::MalformedCsv(format!(
                "row {} has {} fields, expected 6",
                lineno + 2,
                fields.len()
            )));
        }
        let mut vals = [0.0f64; 6];
        for (v, f) in vals.iter_mut().zip(&fields) {
            *v = f.parse().map_err(|_| {
                Error::MalformedCsv(format!("row {}: bad number {f:?}", lineno + 2))
            })?;
        }
        records.push(SweepRecord {
            param: vals[0],
            j_classical: vals[1],
            j_quantum: vals[2],
            j_ns: vals[3],
            adv_quantum: vals[4],
            adv_ns: vals[5],
        });
    }
    Ok(records)
}

pub fn read_csv_file(path: &Path) -> Result<Vec<SweepRecord>> {
    read_csv(std::io::BufReader::new(std::fs::File::open(path)?))
}

/// Outcome of one golden check in the verification suite.
#[derive(Debug, Clone)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Reference reproduction of the known exact values; backs the CLI `verify`
/// subcommand.
pub fn golden_suite() -> Vec<GoldenCheck> {
    use crate::nosignalling::NsVertexId;
    use crate::problem::expected_cost;
    use crate::quantum::strategy::{advantage_strategy, advantage_table, strategy_table};

    let mut checks = Vec::new();
    let mut push = |name: &'static str, passed: bool, detail: String| {
        checks.push(GoldenCheck {
            name,
            passed,
            detail,
        });
    };
    let d_star = DecisionProblem::new(0.8, 0.8, 1.0, 3.0).expect("reference problem is valid");

    let (c, _) = closed_form_optimum(&d_star);
    push(
        "classical optimum -8/5",
        (c - (-8.0 / 5.0)).abs() <= 1e-12,
        format!("got {c}"),
    );

    let (ns, vertex) = ns_optimum(&d_star);
    push(
        "no-signalling optimum -44/25 at a nonlocal vertex",
        (ns - (-44.0 / 25.0)).abs() <= 1e-12 && matches!(vertex, NsVertexId::Nonlocal { .. }),
        format!("got {ns} at {vertex:?}"),
    );

    let table = strategy_table(&advantage_strategy());
    match table {
        Ok(table) => {
            let diff = table.max_abs_diff(&advantage_table());
            push(
                "reference strategy occupation measure",
                diff <= 1e-9,
                format!("max deviation {diff:e}"),
            );
            let cost = expected_cost(&table, &d_star);
            let ok = matches!(cost, Ok(c) if (c - (-323.0 / 200.0)).abs() <= 1e-9);
            push(
                "reference strategy cost -323/200",
                ok,
                format!("got {cost:?}"),
            );
        }
        Err(e) => {
            push("reference strategy occupation measure", false, e.to_string());
            push("reference strategy cost -323/200", false, "skipped".into());
        }
    }

    let q = quantum_optimum(&d_star, &SearchConfig::default());
    let ok = matches!(q, Ok((c, _)) if c <= -323.0 / 200.0 + 1e-6);
    push(
        "search attains the reference advantage",
        ok,
        format!("got {:?}", q.map(|(c, _)| c)),
    );

    let d_sym = DecisionProblem::new(0.7, 0.7, 1.0, 1.0).expect("valid");
    let (c_sym, _) = closed_form_optimum(&d_sym);
    let q_sym = quantum_optimum(&d_sym, &SearchConfig::default());
    let ok = matches!(q_sym, Ok((qs, _)) if (qs - c_sym).abs() <= 1e-6);
    push(
        "equal weights admit no advantage",
        ok,
        format!("classical {c_sym}, quantum {:?}", q_sym.map(|(c, _)| c)),
    );

    checks
}
