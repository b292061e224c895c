use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use prodxform_core::{Float, PrecisionContext};
use rayon::prelude::*;

use crate::error::{HarnessError, HarnessResult};
use crate::params::{parse_assignment, ParamValue, ParsedParams};
use crate::registry::{descriptor, list_identities, Evaluation, IdentityDescriptor, Tolerance};
use crate::report::{IdentityReport, Verdict};

pub const DEFAULT_SWEEP_CAP: usize = 10_000;

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub ctx: PrecisionContext,
    /// Overrides the descriptor's tolerance when set.
    pub tol: Option<f64>,
    /// Record wall-clock time; off by default so reports are reproducible.
    pub timing: bool,
    pub sweep_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { ctx: PrecisionContext::default(), tol: None, timing: false, sweep_cap: DEFAULT_SWEEP_CAP }
    }
}

/// Context at `bits` with the default target tolerance, raised when the
/// precision cannot support it.
pub fn context_for(bits: u32, tol: Option<f64>) -> HarnessResult<PrecisionContext> {
    let guard = if bits >= 128 { PrecisionContext::DEFAULT_GUARD_BITS } else { 16 };
    let floor = 2f64.powi(-(bits as i32) + guard as i32 + 8);
    let tol = tol.unwrap_or(PrecisionContext::DEFAULT_TOL.max(floor));
    PrecisionContext::new(bits, tol, guard).map_err(|e| HarnessError::Context(e.to_string()))
}

fn decimal(v: &Float, digits: Option<usize>) -> String {
    v.to_string_radix(10, digits)
}

fn validate(d: &IdentityDescriptor, raw: &BTreeMap<String, String>, prec: u32) -> HarnessResult<ParsedParams> {
    for name in raw.keys() {
        if !d.params.iter().any(|p| p.name == name) {
            return Err(HarnessError::MalformedParam(format!("{} takes no parameter {name:?}", d.identity_id)));
        }
    }
    let mut parsed = ParsedParams::default();
    for spec in &d.params {
        let text = raw.get(spec.name).ok_or_else(|| {
            HarnessError::MalformedParam(format!("{} requires {} in {}", d.identity_id, spec.name, spec.range))
        })?;
        let value = ParamValue::parse(spec.kind, text, prec)
            .map_err(|e| match e {
                HarnessError::MalformedParam(m) => HarnessError::MalformedParam(format!("{}: {m}", spec.name)),
                other => other,
            })?;
        parsed.insert(spec.name, value);
    }
    Ok(parsed)
}

fn panic_text(payload: Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = payload.downcast_ref::<&str>() {
        s.to_string()
    } else if let Some(s) = payload.downcast_ref::<String>() {
        s.clone()
    } else {
        "evaluator panicked".into()
    }
}

fn build_report(
    d: &IdentityDescriptor,
    raw: &BTreeMap<String, String>,
    outcome: std::result::Result<Evaluation, String>,
    cfg: &RunConfig,
    runtime_ms: u64,
) -> IdentityReport {
    let ctx = &cfg.ctx;
    let tol = cfg.tol.unwrap_or(match d.tolerance {
        Tolerance::Target => ctx.target_tol(),
        Tolerance::Exact => ctx.exact_tol(),
    });
    let mut report = IdentityReport {
        identity_id: d.identity_id.to_string(),
        params: raw.clone(),
        lhs: "NaN".into(),
        rhs: "NaN".into(),
        abs_err: "NaN".into(),
        rel_err: "NaN".into(),
        tol: format!("{tol:e}"),
        tail_bound: "NaN".into(),
        verdict: Verdict::Error,
        terms_used: 0,
        precision_bits: ctx.bits(),
        runtime_ms,
        message: String::new(),
    };
    let e = match outcome {
        Ok(e) => e,
        Err(msg) => {
            report.message = msg;
            return report;
        }
    };
    let prec = ctx.bits();
    let rel = if e.rhs.is_zero() {
        e.abs_err.clone()
    } else {
        Float::with_val(prec, &e.abs_err / Float::with_val(prec, e.rhs.abs_ref()))
    };
    let lhs_big = Float::with_val(prec, e.lhs.abs_ref()) > 1u32;
    let finite = e.lhs.is_finite() && e.rhs.is_finite() && e.abs_err.is_finite();
    let pass = finite
        && (e.abs_err <= Float::with_val(prec, &e.tail_bound + tol) || (lhs_big && rel <= tol));
    report.verdict = match (pass, e.vacuous) {
        (true, true) => Verdict::PassVacuous,
        (true, false) => Verdict::Pass,
        (false, _) => Verdict::Fail,
    };
    report.lhs = decimal(&e.lhs, None);
    report.rhs = decimal(&e.rhs, None);
    report.abs_err = decimal(&e.abs_err, Some(12));
    report.rel_err = decimal(&rel, Some(12));
    report.tail_bound = decimal(&e.tail_bound, Some(12));
    report.terms_used = e.terms_used;
    report.message = e.message;
    report
}

fn run_validated(d: &IdentityDescriptor, raw: &BTreeMap<String, String>, parsed: &ParsedParams, cfg: &RunConfig) -> IdentityReport {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| (d.evaluate)(parsed, &cfg.ctx)));
    let runtime_ms = if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 };
    let outcome = match outcome {
        Ok(Ok(e)) => Ok(e),
        Ok(Err(e)) => Err(e.to_string()),
        Err(payload) => Err(format!("panic: {}", panic_text(payload))),
    };
    build_report(d, raw, outcome, cfg, runtime_ms)
}

/// Evaluates one identity. Unknown ids and malformed parameters are
/// rejected up front; failures inside the evaluator become `verdict = error`.
pub fn run_identity(identity_id: &str, params: &BTreeMap<String, String>, cfg: &RunConfig) -> HarnessResult<IdentityReport> {
    let d = descriptor(identity_id).ok_or_else(|| HarnessError::UnknownIdentity(identity_id.to_string()))?;
    let parsed = validate(&d, params, cfg.ctx.bits())?;
    Ok(run_validated(&d, params, &parsed, cfg))
}

/// One report per point of the Cartesian grid, row-major over the
/// descriptor's parameter order. `fixed` supplies parameters held constant.
pub fn sweep(
    identity_id: &str,
    grid: &[(String, Vec<String>)],
    fixed: &BTreeMap<String, String>,
    cfg: &RunConfig,
) -> HarnessResult<Vec<IdentityReport>> {
    let d = descriptor(identity_id).ok_or_else(|| HarnessError::UnknownIdentity(identity_id.to_string()))?;
    if grid.is_empty() || grid.iter().any(|(_, v)| v.is_empty()) {
        return Ok(Vec::new());
    }
    let mut axes: Vec<(usize, &String, &Vec<String>)> = Vec::with_capacity(grid.len());
    for (name, values) in grid {
        let pos = d.params.iter().position(|p| p.name == name).ok_or_else(|| {
            HarnessError::MalformedParam(format!("{} takes no parameter {name:?}", d.identity_id))
        })?;
        if axes.iter().any(|(p, _, _)| *p == pos) || fixed.contains_key(name) {
            return Err(HarnessError::MalformedParam(format!("{name} given more than once")));
        }
        axes.push((pos, name, values));
    }
    axes.sort_by_key(|(p, _, _)| *p);
    let points = axes.iter().try_fold(1usize, |acc, (_, _, v)| acc.checked_mul(v.len()));
    let points = points.unwrap_or(usize::MAX);
    if points > cfg.sweep_cap {
        return Err(HarnessError::GridTooLarge { points, cap: cfg.sweep_cap });
    }

    let mut maps = Vec::with_capacity(points);
    for index in 0..points {
        let mut raw = fixed.clone();
        let mut rest = index;
        for (_, name, values) in axes.iter().rev() {
            raw.insert((*name).clone(), values[rest % values.len()].clone());
            rest /= values.len();
        }
        maps.push(raw);
    }
    let parsed: Vec<ParsedParams> =
        maps.iter().map(|raw| validate(&d, raw, cfg.ctx.bits())).collect::<HarnessResult<_>>()?;
    Ok(maps
        .par_iter()
        .zip(parsed.par_iter())
        .map(|(raw, p)| run_validated(&d, raw, p, cfg))
        .collect())
}

/// Every registered identity on its canonical grid, in registry order.
pub fn suite(cfg: &RunConfig) -> HarnessResult<Vec<IdentityReport>> {
    let mut jobs = Vec::new();
    for d in list_identities() {
        for point in &d.canonical {
            let mut raw = BTreeMap::new();
            for assignment in point.split_whitespace() {
                let (k, v) = parse_assignment(assignment)?;
                raw.insert(k, v);
            }
            let parsed = validate(&d, &raw, cfg.ctx.bits())?;
            jobs.push((d.clone(), raw, parsed));
        }
    }
    Ok(jobs.par_iter().map(|(d, raw, p)| run_validated(d, raw, p, cfg)).collect())
}
