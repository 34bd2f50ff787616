//! Command-line verification runs over the identity registry.
//!
//! `list` prints the registry, `run` samples and verifies identities and
//! writes JSON and CSV reports, `limits` runs the `q -> 1` checks.

pub mod config;
pub mod report;

pub use config::RunConfig;
pub use report::{IdentityBlock, RunReport};

use qseries::exec::{with_workers, Execution};
use qseries::foldquad::QuadratureConfig;
use qseries::identities::{
    find, limit_check, limit_suites, qgamma_half_limit, registry, sample_domain, verify_with, LimitReport,
    ParameterPoint, PeriodicWeight, Status,
};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("report error: {0}")]
    Report(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_USAGE,
            _ => EXIT_FAIL,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// One line per record, sorted by id: id, anchor, constraints.
pub fn cmd_list() -> String {
    let mut recs: Vec<_> = registry().iter().collect();
    recs.sort_by_key(|r| r.id);
    let mut out = String::new();
    for r in recs {
        let _ = writeln!(out, "{}\t{}\t{}", r.id, r.anchor, r.constraint_summary());
    }
    out
}

/// Sample and verify every selected identity. The report is complete even
/// when some points fail; the caller decides the exit status from it.
pub fn cmd_run(cfg: &RunConfig) -> Result<RunReport, CliError> {
    cfg.validate()?;
    let ids = cfg.selected()?;
    let weight = cfg.weight.as_deref().and_then(PeriodicWeight::by_name);
    let q_range = (cfg.q_range[0], cfg.q_range[1]);
    let mut blocks = Vec::with_capacity(ids.len());
    let mut jobs: Vec<(usize, ParameterPoint)> = Vec::new();
    for (i, id) in ids.iter().enumerate() {
        let rec = find(id).map_err(|e| CliError::Config(e.to_string()))?;
        let tol = cfg.tol_overrides.get(*id).copied().unwrap_or(rec.tolerance);
        let w = weight.as_ref().filter(|w| Some(w.kind()) == rec.weight_slot);
        let mut block = IdentityBlock::new(rec, tol, w);
        match sample_domain(rec, cfg.seed, cfg.samples, q_range) {
            Ok(points) => jobs.extend(points.into_iter().map(|p| (i, p))),
            Err(e) => block.error = Some(e.to_string()),
        }
        blocks.push(block);
    }
    let exec = match cfg.workers {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    };
    let quad = QuadratureConfig::default().sequential();
    let results = with_workers(cfg.workers, || {
        exec.map(&jobs, |(i, p)| {
            let rec = find(ids[*i]).expect("selected id");
            let w = weight.as_ref().filter(|w| Some(w.kind()) == rec.weight_slot);
            verify_with(rec, p, w, blocks[*i].tolerance, &quad)
        })
    });
    for ((i, _), r) in jobs.iter().zip(results) {
        blocks[*i].push(r);
    }
    let report = RunReport::new(cfg, blocks);
    if let Some(path) = &cfg.report {
        report.write_json(path)?;
    }
    if let Some(path) = &cfg.csv {
        report.write_csv(path)?;
    }
    Ok(report)
}

/// Exit status for a finished run: 0 iff every non-rejected point passed
/// and every sampler produced its points.
pub fn run_exit_code(report: &RunReport) -> i32 {
    let bad = report.identities.iter().any(|b| {
        b.error.is_some() || b.reports.iter().any(|r| matches!(r.status, Status::Fail | Status::EvaluatorError))
    });
    if bad {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

/// Run every built-in limit suite along `q_seq`.
pub fn cmd_limits(q_seq: &[f64]) -> Result<Vec<LimitReport>, CliError> {
    let cfg_err = |e: qseries::QError| match e {
        qseries::QError::InvalidConfig(msg) => CliError::Config(msg),
        other => CliError::Config(other.to_string()),
    };
    let mut out = vec![qgamma_half_limit(q_seq).map_err(cfg_err)?];
    for (rec, point) in limit_suites() {
        out.push(limit_check(rec, &point, q_seq).map_err(cfg_err)?);
    }
    Ok(out)
}

/// 1 if any suite is not monotone or could not be evaluated at some `q`;
/// sequences of length one make no assertion.
pub fn limits_exit_code(reports: &[LimitReport]) -> i32 {
    let bad = reports.iter().any(|r| r.monotone == Some(false) || r.entries.iter().any(|e| e.error.is_none()));
    if bad {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

pub fn format_limits(reports: &[LimitReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let params: Vec<String> = r.point.params.iter().map(|(k, v)| format!("{k}={}", v.re)).collect();
        let _ = write!(out, "{} [{}]", r.identity, params.join(" "));
        for e in &r.entries {
            match e.error {
                Some(err) => {
                    let _ = write!(out, "  q={}: {err:.3e}", e.q);
                }
                None => {
                    let _ = write!(out, "  q={}: {}", e.q, e.message.as_deref().unwrap_or("error"));
                }
            }
        }
        let verdict = match r.monotone {
            Some(true) => "monotone",
            Some(false) => "NOT monotone",
            None => "no assertion",
        };
        let _ = writeln!(out, "  {verdict}");
    }
    out
}
