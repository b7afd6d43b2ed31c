//! Command-line front end for the `concount` library.

pub mod args;
pub mod commands;
pub mod error;
pub mod grammar;
pub mod report;
pub mod tables;
pub mod verify;

use std::time::Instant;

use serde_json::json;

use crate::args::{Cli, Command, TableArgs, VerifyArgs};
use crate::error::{CliResult, EXIT_FAILED, EXIT_OK};
use crate::report::Report;
use crate::verify::{counterexample_json, parse_suites, run_suite, VerifyConfig};

/// A rendered-to-be report plus the exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit_code: i32,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome {
            report,
            exit_code: EXIT_OK,
        }
    }
}

pub fn run(cli: &Cli) -> CliResult<Outcome> {
    let start = Instant::now();
    let mut out: Outcome = match &cli.command {
        Command::Count(a) => commands::count(a)?.into(),
        Command::WeightDist(a) => commands::weight_dist(a)?.into(),
        Command::Bound(a) => commands::bound(a)?.into(),
        Command::Fourier(a) => commands::fourier(a)?.into(),
        Command::Table(a) => table(a)?,
        Command::Verify(a) => verify(a)?,
    };
    if cli.timing {
        out.report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok(out)
}

fn table(a: &TableArgs) -> CliResult<Outcome> {
    let t = tables::compute_table(&a.id, a.max_n)?;
    let exit_code = if t.mismatches().next().is_some() {
        EXIT_FAILED
    } else {
        EXIT_OK
    };
    Ok(Outcome {
        report: t.to_report(a.max_n),
        exit_code,
    })
}

fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    let suites = parse_suites(&a.suites)?;
    let cfg = VerifyConfig {
        max_n: a.max_n,
        inject_fault: a.inject_fault,
    };
    let inputs = json!({
        "max_n": a.max_n,
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        "inject_fault": a.inject_fault,
    });
    let mut rep = Report::new("", inputs).header(["suite", "checks", "status"]);
    let mut results = Vec::new();
    let mut first_failure = None;
    for s in suites {
        let r = run_suite(s, cfg);
        rep.row([
            format!("({}) {}", s.letter(), s.name()),
            r.checks.to_string(),
            if r.passed() { "PASS" } else { "FAIL" }.to_string(),
        ]);
        results.push(json!({"suite": s.name(), "checks": r.checks, "passed": r.passed()}));
        if !r.passed() && first_failure.is_none() {
            first_failure = Some(counterexample_json(&r));
            break;
        }
    }
    let failed = first_failure.is_some();
    if let Some(c) = &first_failure {
        rep.notes.push(format!("counterexample: {c}"));
    }
    rep.notes.push(
        if failed {
            "verify: FAIL"
        } else {
            "verify: all suites passed"
        }
        .to_string(),
    );
    rep.result = json!({"suites": results, "passed": !failed, "counterexample": first_failure});
    rep.provenance =
        json!({"seed": verify::SEED, "random_codes_per_n": verify::RANDOM_CODES_PER_N});
    Ok(Outcome {
        report: rep,
        exit_code: if failed { EXIT_FAILED } else { EXIT_OK },
    })
}
