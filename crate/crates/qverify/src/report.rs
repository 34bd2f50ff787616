//! JSON and CSV run reports.

use crate::{CliError, RunConfig};
use qseries::identities::{IdentityRecord, PeriodicWeight, Status, VerificationReport};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityBlock {
    pub identity: String,
    pub anchor: String,
    pub tolerance: f64,
    pub weight: Option<String>,
    pub passed: usize,
    pub failed: usize,
    pub rejected: usize,
    pub errors: usize,
    pub worst_rel_err: Option<f64>,
    /// Sampler failure, if the points could not be drawn.
    pub error: Option<String>,
    pub reports: Vec<VerificationReport>,
}

impl IdentityBlock {
    pub(crate) fn new(rec: &IdentityRecord, tol: f64, weight: Option<&PeriodicWeight>) -> Self {
        IdentityBlock {
            identity: rec.id.to_string(),
            anchor: rec.anchor.to_string(),
            tolerance: tol,
            weight: weight.map(|w| w.name().to_string()),
            passed: 0,
            failed: 0,
            rejected: 0,
            errors: 0,
            worst_rel_err: None,
            error: None,
            reports: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, r: VerificationReport) {
        match r.status {
            Status::Pass => {
                self.passed += 1;
                let e = r.rel_err.unwrap_or(0.0);
                self.worst_rel_err = Some(self.worst_rel_err.map_or(e, |w| w.max(e)));
            }
            Status::Fail => self.failed += 1,
            Status::RejectedDomain | Status::RejectedConditioning => self.rejected += 1,
            Status::EvaluatorError => self.errors += 1,
        }
        self.reports.push(r);
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub seed: u64,
    pub samples: usize,
    pub q_range: [f64; 2],
    pub precision: String,
    pub identities: Vec<IdentityBlock>,
}

const CSV_HEADER: [&str; 13] = [
    "identity", "index", "status", "q", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err", "tolerance",
    "lhs_conditioning", "rhs_conditioning",
];

fn num(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.17e}")).unwrap_or_default()
}

impl RunReport {
    pub(crate) fn new(cfg: &RunConfig, identities: Vec<IdentityBlock>) -> Self {
        RunReport { seed: cfg.seed, samples: cfg.samples, q_range: cfg.q_range, precision: "double".into(), identities }
    }

    pub fn to_json(&self) -> Result<String, CliError> {
        serde_json::to_string_pretty(self).map_err(|e| CliError::Report(e.to_string()))
    }

    pub fn write_json(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn write_csv(&self, path: &Path) -> Result<(), CliError> {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Report(e.to_string()))?;
        w.write_record(CSV_HEADER).map_err(|e| CliError::Report(e.to_string()))?;
        for b in &self.identities {
            for (i, r) in b.reports.iter().enumerate() {
                let row = [
                    r.identity.clone(),
                    i.to_string(),
                    r.status.to_string(),
                    num(Some(r.point.q)),
                    num(r.lhs.map(|v| v.re)),
                    num(r.lhs.map(|v| v.im)),
                    num(r.rhs.map(|v| v.re)),
                    num(r.rhs.map(|v| v.im)),
                    num(r.abs_err),
                    num(r.rel_err),
                    num(Some(r.tolerance)),
                    num(r.receipts.get("lhs.conditioning").copied()),
                    num(r.receipts.get("rhs.conditioning").copied()),
                ];
                w.write_record(&row).map_err(|e| CliError::Report(e.to_string()))?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// One line per identity plus a total.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        let (mut p, mut f, mut r, mut e) = (0, 0, 0, 0);
        for b in &self.identities {
            let worst = b.worst_rel_err.map(|w| format!("{w:.1e}")).unwrap_or_else(|| "-".into());
            let _ = write!(
                out,
                "{:<26} pass {:>4}  fail {:>3}  rejected {:>3}  error {:>3}  worst {:>7}  tol {:.0e}",
                b.identity, b.passed, b.failed, b.rejected, b.errors, worst, b.tolerance
            );
            if let Some(msg) = &b.error {
                let _ = write!(out, "  sampler: {msg}");
            }
            out.push('\n');
            p += b.passed;
            f += b.failed;
            r += b.rejected;
            e += b.errors;
        }
        let _ = writeln!(out, "total: {p} passed, {f} failed, {r} rejected, {e} evaluator errors");
        out
    }
}
