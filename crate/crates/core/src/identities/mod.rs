//! Registry of closed-form identities and the harness that checks them.
//!
//! Each [`IdentityRecord`] carries its admissibility constraints, a seeded
//! proposal distribution and two evaluators. The left and right sides are
//! computed along separate routes: typically a quadrature or a series on
//! one side and infinite products on the other.

mod chain;
mod eval;
mod limits;
mod records;

pub use chain::{eta_chain, EtaChain};
pub use eval::{EvalContext, Side};
pub use limits::{limit_check, limit_suites, qgamma_half_limit, LimitEntry, DEFAULT_LIMIT_QS, LimitReport, LIMIT_NOISE_FLOOR};

use crate::error::{QError, QResult};
use crate::exec::Execution;
use crate::foldquad::QuadratureConfig;
use crate::qcore::{CNum, QBase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::{Arc, OnceLock};

/// Complex number in report form, `{"re": .., "im": ..}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CValue {
    pub re: f64,
    pub im: f64,
}

impl From<CNum> for CValue {
    fn from(z: CNum) -> Self {
        CValue { re: z.re, im: z.im }
    }
}

impl From<CValue> for CNum {
    fn from(v: CValue) -> Self {
        CNum::new(v.re, v.im)
    }
}

/// Named complex parameters plus the base `q`.
///
/// Greek parameters use their English names: `alpha`, `beta`, `gamma`,
/// `delta`, `lambda`, `mu`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ParameterPoint {
    pub q: f64,
    pub params: BTreeMap<String, CValue>,
}

impl ParameterPoint {
    pub fn new(q: f64) -> Self {
        ParameterPoint { q, params: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, v: CNum) -> Self {
        self.set(name, v);
        self
    }

    pub fn with_real(self, name: &str, v: f64) -> Self {
        self.with(name, CNum::new(v, 0.0))
    }

    pub fn set(&mut self, name: &str, v: CNum) {
        self.params.insert(name.to_string(), v.into());
    }

    pub fn get(&self, name: &str) -> Option<CNum> {
        self.params.get(name).map(|&v| v.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightKind {
    /// `p(x + 1) = p(x)`
    UnitPeriodic,
    /// `p(x + 1) = -p(x)`
    AntiPeriodic,
}

/// The free periodic function carried by the fold identities.
#[derive(Clone)]
pub struct PeriodicWeight {
    kind: WeightKind,
    name: String,
    eval: Arc<dyn Fn(f64) -> CNum + Send + Sync>,
}

impl fmt::Debug for PeriodicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicWeight").field("kind", &self.kind).field("name", &self.name).finish()
    }
}

impl PeriodicWeight {
    pub fn new(kind: WeightKind, name: &str, eval: impl Fn(f64) -> CNum + Send + Sync + 'static) -> Self {
        PeriodicWeight { kind, name: name.to_string(), eval: Arc::new(eval) }
    }

    /// `p(x) = 1`
    pub fn one() -> Self {
        Self::new(WeightKind::UnitPeriodic, "one", |_| CNum::new(1.0, 0.0))
    }

    /// `p(x) = 1 + cos(2 pi x) / 2`
    pub fn cosine() -> Self {
        Self::new(WeightKind::UnitPeriodic, "cosine", |x| {
            CNum::new(1.0 + 0.5 * (2.0 * std::f64::consts::PI * x).cos(), 0.0)
        })
    }

    /// `w(x) = sin(pi x)`, anti-periodic.
    pub fn sine() -> Self {
        Self::new(WeightKind::AntiPeriodic, "sine", |x| CNum::new((std::f64::consts::PI * x).sin(), 0.0))
    }

    /// Look up one of the built-in weights by name.
    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "one" => Some(Self::one()),
            "cosine" => Some(Self::cosine()),
            "sine" => Some(Self::sine()),
            _ => None,
        }
    }

    pub fn default_for(kind: WeightKind) -> Self {
        match kind {
            WeightKind::UnitPeriodic => Self::one(),
            WeightKind::AntiPeriodic => Self::sine(),
        }
    }

    pub fn kind(&self) -> WeightKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> CNum {
        (self.eval)(x)
    }

    /// Largest `|p(x+1) - s p(x)|` over `xs`, with `s = 1` or `-1` by kind.
    pub fn periodicity_defect(&self, xs: &[f64]) -> f64 {
        let s = match self.kind {
            WeightKind::UnitPeriodic => 1.0,
            WeightKind::AntiPeriodic => -1.0,
        };
        xs.iter().map(|&x| (self.eval(x + 1.0) - self.eval(x) * s).norm()).fold(0.0, f64::max)
    }
}

/// One admissibility condition. A missing parameter makes it fail.
#[derive(Clone, Copy)]
pub struct Constraint {
    pub description: &'static str,
    pub check: fn(&ParameterPoint) -> Option<bool>,
}

impl Constraint {
    pub const fn new(description: &'static str, check: fn(&ParameterPoint) -> Option<bool>) -> Self {
        Constraint { description, check }
    }

    pub fn holds(&self, p: &ParameterPoint) -> bool {
        (self.check)(p).unwrap_or(false)
    }
}

impl fmt::Debug for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.description)
    }
}

pub type SideEvaluator = fn(&EvalContext) -> QResult<Side>;

/// Random proposal; the harness filters it through the constraints.
pub type Proposal = fn(&mut Draw) -> ParameterPoint;

#[derive(Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    /// Short human-readable name of the identity.
    pub anchor: &'static str,
    pub params: &'static [&'static str],
    pub constraints: Vec<Constraint>,
    pub weight_slot: Option<WeightKind>,
    pub tolerance: f64,
    pub lhs: SideEvaluator,
    pub rhs: SideEvaluator,
    pub propose: Proposal,
    pub notes: &'static str,
}

impl fmt::Debug for IdentityRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdentityRecord")
            .field("id", &self.id)
            .field("params", &self.params)
            .field("constraints", &self.constraints)
            .field("weight_slot", &self.weight_slot)
            .field("tolerance", &self.tolerance)
            .finish()
    }
}

impl IdentityRecord {
    /// `Ok` when every parameter is present and every constraint holds,
    /// otherwise the first violated condition.
    pub fn admissible(&self, p: &ParameterPoint) -> Result<(), String> {
        if !(p.q > 0.0 && p.q < 1.0) {
            return Err(format!("q = {} is not in (0, 1)", p.q));
        }
        for name in self.params {
            match p.get(name) {
                None => return Err(format!("missing parameter {name}")),
                Some(v) if !(v.re.is_finite() && v.im.is_finite()) => {
                    return Err(format!("parameter {name} is not finite"))
                }
                _ => {}
            }
        }
        match self.constraints.iter().find(|c| !c.holds(p)) {
            Some(c) => Err(format!("violates: {}", c.description)),
            None => Ok(()),
        }
    }

    /// One line per constraint, joined with `"; "`.
    pub fn constraint_summary(&self) -> String {
        self.constraints.iter().map(|c| c.description).collect::<Vec<_>>().join("; ")
    }
}

/// All records, in registry order.
pub fn registry() -> &'static [IdentityRecord] {
    static REG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();
    REG.get_or_init(records::all)
}

pub fn find(id: &str) -> QResult<&'static IdentityRecord> {
    registry().iter().find(|r| r.id == id).ok_or_else(|| QError::UnknownIdentity(id.to_string()))
}

/// Seeded draws for the proposal functions.
pub struct Draw<'r> {
    rng: &'r mut ChaCha8Rng,
    pub q: f64,
}

impl<'r> Draw<'r> {
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        if hi <= lo {
            return lo;
        }
        self.rng.gen_range(lo..hi)
    }

    pub fn real(&mut self, lo: f64, hi: f64) -> CNum {
        CNum::new(self.uniform(lo, hi), 0.0)
    }

    /// Modulus in `[rlo, rhi)`, argument uniform on the circle.
    pub fn polar(&mut self, rlo: f64, rhi: f64) -> CNum {
        let pi = std::f64::consts::PI;
        self.polar_arg(rlo, rhi, -pi, pi)
    }

    pub fn polar_arg(&mut self, rlo: f64, rhi: f64, alo: f64, ahi: f64) -> CNum {
        let r = self.uniform(rlo, rhi);
        let t = self.uniform(alo, ahi);
        CNum::from_polar(r, t)
    }

    pub fn boxed(&mut self, re: (f64, f64), im: (f64, f64)) -> CNum {
        CNum::new(self.uniform(re.0, re.1), self.uniform(im.0, im.1))
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn ln_inv_q(&self) -> f64 {
        -self.q.ln()
    }
}

/// Range of `q` the samplers draw from unless told otherwise.
pub const DEFAULT_Q_RANGE: (f64, f64) = (0.1, 0.9);

/// Number of draws after which a sampler with acceptance below
/// [`MIN_ACCEPTANCE`] gives up.
pub const STARVATION_DRAWS: usize = 1_000_000;
pub const MIN_ACCEPTANCE: f64 = 1e-3;

fn stream_seed(id: &str, seed: u64) -> u64 {
    // FNV-1a over the id so every record gets its own stream
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// `count` admissible points for `rec`, with `q` uniform on `q_range`.
/// Deterministic in `(rec.id, seed, count, q_range)`.
pub fn sample_domain(
    rec: &IdentityRecord,
    seed: u64,
    count: usize,
    q_range: (f64, f64),
) -> QResult<Vec<ParameterPoint>> {
    if count == 0 {
        return Err(QError::InvalidConfig("sample count must be at least 1".into()));
    }
    let (lo, hi) = q_range;
    if !(lo > 0.0 && lo < hi && hi < 1.0) {
        return Err(QError::InvalidConfig(format!("q range [{lo}, {hi}] is not inside (0, 1)")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(rec.id, seed));
    let mut out = Vec::with_capacity(count);
    let mut draws = 0usize;
    while out.len() < count {
        draws += 1;
        let q = rng.gen_range(lo..hi);
        let point = (rec.propose)(&mut Draw { rng: &mut rng, q });
        if rec.admissible(&point).is_ok() {
            out.push(point);
        }
        if draws >= STARVATION_DRAWS && (out.len() as f64) < MIN_ACCEPTANCE * draws as f64 {
            return Err(QError::SamplerStarved { id: rec.id.to_string(), accepted: out.len(), draws });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    RejectedDomain,
    /// Rounding alone could exceed the tolerance at this point.
    RejectedConditioning,
    EvaluatorError,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::RejectedDomain => "rejected-domain",
            Status::RejectedConditioning => "rejected-conditioning",
            Status::EvaluatorError => "evaluator-error",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub anchor: String,
    pub point: ParameterPoint,
    pub weight: Option<String>,
    pub lhs: Option<CValue>,
    pub rhs: Option<CValue>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    /// Diagnostics from both evaluators, keyed `lhs.*`, `rhs.*`; side
    /// checks that gate the status are keyed `check.*`.
    pub receipts: BTreeMap<String, f64>,
    pub message: Option<String>,
}

impl VerificationReport {
    fn bare(rec: &IdentityRecord, point: &ParameterPoint, weight: Option<&PeriodicWeight>, tol: f64) -> Self {
        VerificationReport {
            identity: rec.id.to_string(),
            anchor: rec.anchor.to_string(),
            point: point.clone(),
            weight: weight.map(|w| w.name().to_string()),
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            tolerance: tol,
            status: Status::RejectedDomain,
            receipts: BTreeMap::new(),
            message: None,
        }
    }
}

fn run_side(f: SideEvaluator, cx: &EvalContext) -> Result<Side, String> {
    match catch_unwind(AssertUnwindSafe(|| f(cx))) {
        Ok(Ok(side)) => {
            if side.value.re.is_finite() && side.value.im.is_finite() {
                Ok(side)
            } else {
                Err("non-finite value".into())
            }
        }
        Ok(Err(e)) => Err(e.to_string()),
        Err(_) => Err("evaluator panicked".into()),
    }
}

/// Relative rounding error per unit of cancellation. A side whose sums
/// and integrals cancel by a factor `k` is trusted to `ROUNDING_UNIT * k`.
/// Cancellation-limited errors on sampled points stay below `6e-15 * k`;
/// quadrature-limited ones reach `1.3e-14` only where `k` is near one.
pub const ROUNDING_UNIT: f64 = 1e-14;

/// Check one point with sequential quadrature. Never panics; every
/// failure is encoded in the report status.
pub fn verify(
    rec: &IdentityRecord,
    point: &ParameterPoint,
    weight: Option<&PeriodicWeight>,
    tol: f64,
) -> VerificationReport {
    verify_with(rec, point, weight, tol, &QuadratureConfig::default().sequential())
}

pub fn verify_with(
    rec: &IdentityRecord,
    point: &ParameterPoint,
    weight: Option<&PeriodicWeight>,
    tol: f64,
    quad: &QuadratureConfig,
) -> VerificationReport {
    let default_weight;
    let weight = match (rec.weight_slot, weight) {
        (Some(kind), Some(w)) if w.kind() == kind => Some(w),
        (Some(kind), None) => {
            default_weight = PeriodicWeight::default_for(kind);
            Some(&default_weight)
        }
        (None, None) => None,
        (_, Some(w)) => {
            let mut r = VerificationReport::bare(rec, point, Some(w), tol);
            r.message = Some(format!("weight {:?} does not fit slot {:?}", w.kind(), rec.weight_slot));
            return r;
        }
    };
    let mut report = VerificationReport::bare(rec, point, weight, tol);
    if let Err(msg) = rec.admissible(point) {
        report.message = Some(msg);
        return report;
    }
    let q = match QBase::new(point.q) {
        Ok(q) => q,
        Err(e) => {
            report.message = Some(e.to_string());
            return report;
        }
    };
    let one = PeriodicWeight::one();
    let cx = EvalContext { point, q, weight: weight.unwrap_or(&one), quad: *quad };
    let lhs = run_side(rec.lhs, &cx);
    let rhs = run_side(rec.rhs, &cx);
    let (lhs, rhs) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => (l, r),
        (l, r) => {
            let mut msgs = Vec::new();
            if let Err(e) = &l {
                msgs.push(format!("lhs: {e}"));
            }
            if let Err(e) = &r {
                msgs.push(format!("rhs: {e}"));
            }
            report.lhs = l.ok().map(|s| s.value.into());
            report.rhs = r.ok().map(|s| s.value.into());
            report.status = Status::EvaluatorError;
            report.message = Some(msgs.join("; "));
            return report;
        }
    };
    let conditioning = lhs.conditioning().max(rhs.conditioning());
    report.receipts.insert("lhs.conditioning".into(), lhs.conditioning());
    report.receipts.insert("rhs.conditioning".into(), rhs.conditioning());
    let abs_err = (lhs.value - rhs.value).norm();
    let scale = rhs.value.norm();
    let rel_err = if scale > 0.0 { abs_err / scale } else { abs_err };
    let mut ok = rel_err < tol && lhs.converged && rhs.converged;
    let mut failed_checks = Vec::new();
    for (prefix, side) in [("lhs", &lhs), ("rhs", &rhs)] {
        for (k, v) in &side.receipts {
            report.receipts.insert(format!("{prefix}.{k}"), *v);
        }
        for (k, v) in &side.checks {
            report.receipts.insert(format!("check.{k}"), *v);
            if !(*v < tol) {
                ok = false;
                failed_checks.push(k.clone());
            }
        }
    }
    report.lhs = Some(lhs.value.into());
    report.rhs = Some(rhs.value.into());
    report.abs_err = Some(abs_err);
    report.rel_err = Some(rel_err);
    report.status = if ok { Status::Pass } else { Status::Fail };
    if !failed_checks.is_empty() {
        report.message = Some(format!("side checks above tolerance: {}", failed_checks.join(", ")));
    }
    let attainable = ROUNDING_UNIT * conditioning;
    if !(attainable < tol) {
        report.status = Status::RejectedConditioning;
        report.message = Some(format!(
            "cancellation factor {conditioning:.1e} limits double precision to about {attainable:.1e} relative"
        ));
    }
    report
}

/// Verify many points, fanning out according to `exec`. Report order
/// follows `points`.
pub fn verify_batch(
    rec: &IdentityRecord,
    points: &[ParameterPoint],
    weight: Option<&PeriodicWeight>,
    tol: f64,
    exec: Execution,
) -> Vec<VerificationReport> {
    let quad = QuadratureConfig::default().sequential();
    exec.map(points, |p| verify_with(rec, p, weight, tol, &quad))
}
