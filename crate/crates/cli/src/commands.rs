use std::process::ExitCode;

use anyhow::{Context, Result};
use repfree_core::analytics::{self, Formula};
use repfree_core::montecarlo::{fit_sqrtnlogn, sweep_seed, Sampler};
use repfree_core::oracle::Enumerator;
use repfree_core::reports::{self, discrepancy_ledger, Budget, Verdict, LEDGER_VERSION};
use repfree_core::rng::GENERATOR_VERSION;
use repfree_core::{
    run_bucket, AlgorithmId, Detector, Error, GarbagePolicy, SampleSummary, Sequence, TableId,
};
use serde::Serialize;

use crate::output::{self, Cell, Meta, Report};
use crate::{Command, Common, EXIT_REPEAT};

pub fn dispatch(common: &Common, command: &Command) -> Result<ExitCode> {
    match command {
        Command::Check { alg, seq, garbage } => check(common, *alg, seq, *garbage),
        Command::Enumerate { n, alg, garbage } => enumerate(common, *n, *alg, *garbage),
        Command::Sample { n, alg, garbage } => sample(common, *n, *alg, *garbage),
        Command::Sweep { n, alg } => sweep(common, &n.0, *alg),
        Command::Fit { alg, n, points } => fit(
            common,
            *alg,
            n.as_ref().map(|r| r.0.as_slice()),
            points.as_deref(),
        ),
        Command::Formula { name, n } => formula(common, *name, &n.0),
        Command::Table { id } => table(common, *id),
        Command::Ledger => ledger(common),
    }
}

fn meta(common: &Common, command: &'static str) -> Meta {
    Meta {
        format_version: output::FORMAT_VERSION,
        command,
        workers: common.workers,
        ..Meta::default()
    }
}

fn emit(report: &Report, common: &Common) -> Result<ExitCode> {
    output::print(report, common.format).context("writing output")?;
    Ok(ExitCode::SUCCESS)
}

/// Enumeration settings from the environment cap and `--workers`.
fn enumerator(common: &Common) -> Result<Enumerator> {
    Ok(Enumerator::from_env()?.with_workers(common.workers)?)
}

fn check(
    common: &Common,
    alg: AlgorithmId,
    seq: &str,
    garbage: Option<GarbagePolicy>,
) -> Result<ExitCode> {
    let s: Sequence = seq.parse()?;
    let mut detector = Detector::new(alg, garbage)?;
    let m = detector.run(&s);
    let trace = (alg == AlgorithmId::Bucket).then(|| run_bucket(&s).1);

    #[derive(Serialize)]
    struct CheckResult<'a> {
        algorithm: AlgorithmId,
        policy: Option<GarbagePolicy>,
        n: usize,
        #[serde(flatten)]
        metrics: repfree_core::RunMetrics,
        #[serde(skip_serializing_if = "Option::is_none")]
        bucket: Option<&'a repfree_core::BucketTrace>,
    }
    let mut report = Report::new(
        meta(common, "check"),
        vec![
            "algorithm",
            "policy",
            "n",
            "good",
            "comparisons",
            "assignments",
            "first_repeat_position",
        ],
        CheckResult {
            algorithm: alg,
            policy: garbage,
            n: s.n(),
            metrics: m,
            bucket: trace.as_ref(),
        },
    )?;
    report.row(vec![
        alg.name().into(),
        garbage.map(|p| p.to_string()).into(),
        s.n().into(),
        m.good.into(),
        m.comparisons.into(),
        m.assignments.into(),
        m.first_repeat_position.into(),
    ]);
    output::print(&report, common.format).context("writing output")?;
    Ok(if m.good {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REPEAT)
    })
}

fn enumerate(
    common: &Common,
    n: usize,
    alg: AlgorithmId,
    garbage: Option<GarbagePolicy>,
) -> Result<ExitCode> {
    let e = enumerator(common)?;
    let s = e.enumerate(n, alg, garbage)?;
    let mut m = meta(common, "enumerate");
    m.cap = Some(e.cap());

    #[derive(Serialize)]
    struct Exact<'a> {
        #[serde(flatten)]
        summary: &'a repfree_core::ExactSummary,
        expected_comparisons: f64,
        expected_assignments: f64,
        expected_comparisons_ratio: (u64, u64),
        expected_assignments_ratio: (u64, u64),
    }
    let mut report = Report::new(
        m,
        vec![
            "n",
            "algorithm",
            "policy",
            "total_inputs",
            "good_count",
            "comparison_sum",
            "assignment_sum",
            "expected_comparisons",
            "expected_assignments",
        ],
        Exact {
            summary: &s,
            expected_comparisons: s.expected_comparisons(),
            expected_assignments: s.expected_assignments(),
            expected_comparisons_ratio: s.expected_comparisons_ratio(),
            expected_assignments_ratio: s.expected_assignments_ratio(),
        },
    )?;
    report.row(vec![
        s.n.into(),
        s.algorithm.name().into(),
        s.policy.map(|p| p.to_string()).into(),
        s.total_inputs.into(),
        s.good_count.into(),
        s.comparison_sum.into(),
        s.assignment_sum.into(),
        s.expected_comparisons().into(),
        s.expected_assignments().into(),
    ]);
    emit(&report, common)
}

const SAMPLE_COLUMNS: [&str; 12] = [
    "n",
    "algorithm",
    "policy",
    "sample_count",
    "seed",
    "mean_comparisons",
    "mean_assignments",
    "comparison_variance",
    "std_error",
    "good_count",
    "comparison_sum",
    "assignment_sum",
];

fn sample_row(s: &SampleSummary) -> Vec<Cell> {
    vec![
        s.n.into(),
        s.algorithm.name().into(),
        s.policy.map(|p| p.to_string()).into(),
        s.sample_count.into(),
        s.seed.into(),
        s.mean_comparisons.into(),
        s.mean_assignments.into(),
        s.comparison_variance.into(),
        s.std_error.into(),
        s.good_count.into(),
        s.comparison_sum.into(),
        s.assignment_sum.into(),
    ]
}

fn sampling_meta(common: &Common, command: &'static str) -> Meta {
    let mut m = meta(common, command);
    m.seed = Some(common.seed);
    m.samples = Some(common.samples);
    m.generator_version = Some(GENERATOR_VERSION);
    m
}

fn sample(
    common: &Common,
    n: usize,
    alg: AlgorithmId,
    garbage: Option<GarbagePolicy>,
) -> Result<ExitCode> {
    let s = Sampler::with_workers(common.workers)?.sample(
        n,
        alg,
        common.samples,
        common.seed,
        garbage,
    )?;
    let mut report = Report::new(sampling_meta(common, "sample"), SAMPLE_COLUMNS.to_vec(), &s)?;
    report.row(sample_row(&s));
    emit(&report, common)
}

fn sweep(common: &Common, ns: &[usize], alg: AlgorithmId) -> Result<ExitCode> {
    let rows =
        Sampler::with_workers(common.workers)?.sweep(ns, alg, common.samples, common.seed, None)?;
    let mut report = Report::new(
        sampling_meta(common, "sweep"),
        SAMPLE_COLUMNS.to_vec(),
        &rows,
    )?;
    for s in &rows {
        report.row(sample_row(s));
    }
    emit(&report, common)
}

/// Parses `n:mean` pairs separated by commas.
fn parse_points(text: &str) -> Result<Vec<(u64, f64)>, Error> {
    text.split(',')
        .map(|pair| {
            let bad =
                || Error::InvalidParameter(format!("malformed point `{pair}`, expected n:mean"));
            let (n, mean) = pair.split_once(':').ok_or_else(bad)?;
            let n = n.trim().parse().map_err(|_| bad())?;
            let mean = mean.trim().parse().map_err(|_| bad())?;
            Ok((n, mean))
        })
        .collect()
}

fn fit(
    common: &Common,
    alg: AlgorithmId,
    ns: Option<&[usize]>,
    points: Option<&str>,
) -> Result<ExitCode> {
    let mut m = meta(common, "fit");
    let mut sources = Vec::new();
    let pts = match (ns, points) {
        (_, Some(text)) => {
            let pts = parse_points(text)?;
            sources.resize(pts.len(), "given");
            pts
        }
        (Some(ns), None) => {
            let e = enumerator(common)?;
            let sampler = Sampler::with_workers(common.workers)?;
            m.cap = Some(e.cap());
            m.max_n_exact = Some(common.max_n_exact);
            let mut pts = Vec::with_capacity(ns.len());
            for &n in ns {
                let mean = if n <= common.max_n_exact {
                    sources.push("exact");
                    e.enumerate(n, alg, None)?.expected_comparisons()
                } else {
                    sources.push("sampled");
                    m.seed = Some(common.seed);
                    m.samples = Some(common.samples);
                    m.generator_version = Some(GENERATOR_VERSION);
                    sampler
                        .sample(n, alg, common.samples, sweep_seed(common.seed, n), None)?
                        .mean_comparisons
                };
                pts.push((n as u64, mean));
            }
            pts
        }
        (None, None) => unreachable!("clap requires --n or --points"),
    };
    let result = fit_sqrtnlogn(&pts)?;
    let mut report = Report::new(
        m,
        vec!["n", "source", "mean_comparisons", "fitted"],
        &result,
    )?;
    for (&(n, mean), source) in pts.iter().zip(&sources) {
        report.row(vec![
            n.into(),
            (*source).into(),
            mean.into(),
            result.predict(n).into(),
        ]);
    }
    report.footer.push(format!(
        "a = {:.6}, b = {:.6}, residual rms = {:.6}",
        result.coefficient_a, result.intercept_b, result.residual_rms
    ));
    emit(&report, common)
}

fn formula(common: &Common, name: Formula, ns: &[usize]) -> Result<ExitCode> {
    let values = ns
        .iter()
        .map(|&n| analytics::evaluate(name, n as u64))
        .collect::<Result<Vec<_>, _>>()?;
    let mut report = Report::new(meta(common, "formula"), vec!["name", "n", "value"], &values)?;
    for v in &values {
        report.row(vec![v.name.name().into(), v.n.into(), v.value.into()]);
    }
    emit(&report, common)
}

fn table(common: &Common, id: TableId) -> Result<ExitCode> {
    let budget = Budget {
        max_n_exact: common.max_n_exact,
        sample_count: common.samples,
        seed: common.seed,
        workers: common.workers,
    };
    let diff = reports::reproduce(id, &budget)?;
    let mut m = meta(common, "table");
    m.max_n_exact = Some(common.max_n_exact);
    if id == TableId::T4 {
        m.seed = Some(common.seed);
        m.samples = Some(common.samples);
        m.generator_version = Some(GENERATOR_VERSION);
    }
    let mut report = Report::new(
        m,
        vec![
            "n",
            "column",
            "mode",
            "expected_text",
            "expected",
            "actual",
            "delta",
            "tolerance",
            "verdict",
        ],
        &diff,
    )?;
    for c in &diff.cells {
        let verdict = serde_json::to_value(c.verdict)?;
        let mode = serde_json::to_value(c.mode)?;
        report.row(vec![
            c.n.into(),
            c.column.clone().into(),
            mode.as_str().unwrap_or_default().into(),
            c.expected_text.clone().into(),
            c.expected.into(),
            c.actual.into(),
            c.delta.into(),
            if c.tolerance.is_finite() {
                Cell::Float(c.tolerance)
            } else {
                Cell::Empty
            },
            verdict.as_str().unwrap_or_default().into(),
        ]);
    }
    report.footer.push(format!(
        "{}: {} ({} pass, {} fail, {} skipped, {} diagnostic)",
        diff.table_id,
        if diff.overall_pass { "PASS" } else { "FAIL" },
        diff.count(Verdict::Pass),
        diff.count(Verdict::Fail),
        diff.count(Verdict::Skipped),
        diff.count(Verdict::Diagnostic),
    ));
    output::print(&report, common.format).context("writing output")?;
    Ok(if diff.overall_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_REPEAT)
    })
}

fn ledger(common: &Common) -> Result<ExitCode> {
    let entries = discrepancy_ledger();
    #[derive(Serialize)]
    struct Ledger<'a> {
        version: u32,
        entries: &'a [reports::Discrepancy],
    }
    let mut report = Report::new(
        meta(common, "ledger"),
        vec!["id", "location", "issue", "resolution"],
        Ledger {
            version: LEDGER_VERSION,
            entries,
        },
    )?;
    for d in entries {
        report.row(vec![
            d.id.into(),
            d.location.into(),
            d.issue.into(),
            d.resolution.into(),
        ]);
    }
    emit(&report, common)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn points() {
        assert_eq!(
            parse_points("4:5, 16:10.5").unwrap(),
            vec![(4, 5.0), (16, 10.5)]
        );
        assert!(parse_points("4").is_err());
        assert!(parse_points("x:1").is_err());
    }
}
