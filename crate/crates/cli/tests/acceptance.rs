//! Acceptance run: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use prodxform::{descriptor, run_identity, suite, sweep, IdentityReport, RunConfig, Verdict};
use prodxform_core::lattice::{continuum_limit_experiment, Ratio};
use prodxform_core::transforms::{dedekind_eta_eq4, dedekind_gen_eq11, product_eq1, product_eq8};
use prodxform_core::{Float, PrecisionContext};
use rand::{rngs::StdRng, Rng, SeedableRng};

const RESIDUAL: f64 = 1e-25;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or(f64::NAN)
}

fn params(text: &str) -> BTreeMap<String, String> {
    text.split_whitespace()
        .map(|kv| {
            let (k, v) = kv.split_once('=').unwrap();
            (k.to_string(), v.to_string())
        })
        .collect()
}

/// Residual in the harness's own metric: relative once |lhs| exceeds one.
fn residual(r: &IdentityReport) -> f64 {
    if num(&r.lhs).abs() > 1.0 {
        num(&r.rel_err)
    } else {
        num(&r.abs_err)
    }
}

fn target_ok(r: &IdentityReport) -> bool {
    r.verdict.is_success() && residual(r) < RESIDUAL
}

fn fmt_time(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn criterion_1(cfg: &RunConfig) -> Outcome {
    let mut worst = 0f64;
    let mut slowest = Duration::ZERO;
    let mut ok = true;
    for a in ["1/3", "1/2", "1", "2", "3", "7.7"] {
        let start = Instant::now();
        let r = run_identity("eq2", &params(&format!("alpha={a}")), cfg).unwrap();
        let took = start.elapsed();
        slowest = slowest.max(took);
        ok &= target_ok(&r) && took < Duration::from_secs(1);
        worst = worst.max(num(&r.abs_err));
    }
    outcome(ok, format!("max |residual| {worst:.3e}, slowest alpha {}", fmt_time(slowest)))
}

fn criterion_2(cfg: &RunConfig) -> Outcome {
    let start = Instant::now();
    let grid = vec![
        ("alpha".to_string(), vec!["1/2".to_string(), "1".into(), "2".into()]),
        ("beta".to_string(), vec!["1/2".to_string(), "1".into(), "2".into()]),
    ];
    let reports = sweep("f3", &grid, &BTreeMap::new(), cfg).unwrap();
    let took = start.elapsed();
    let worst = reports.iter().map(|r| num(&r.abs_err)).fold(0f64, f64::max);
    let ok = reports.len() == 9
        && reports.iter().all(|r| r.verdict == Verdict::Pass && num(&r.abs_err) < RESIDUAL)
        && took < Duration::from_secs(10);
    outcome(ok, format!("9 points, max pairwise residual {worst:.3e}, {}", fmt_time(took)))
}

fn is_unit_alpha(r: &IdentityReport) -> bool {
    r.params.get("alpha").is_some_and(|a| num(a) == 1.0)
}

fn criterion_3(cfg: &RunConfig) -> Outcome {
    const IDS: [&str; 12] =
        ["eq1", "eq4", "eq7", "eq8", "eq10", "eq11", "eq12", "eq13", "legendre5", "sec7", "sec8", "sec9"];
    let start = Instant::now();
    let mut ok = true;
    let mut counts = Vec::new();
    let mut worst = 0f64;
    for id in IDS {
        let d = descriptor(id).unwrap();
        let mut nontrivial = 0;
        for point in &d.canonical {
            let r = run_identity(id, &params(point), cfg).unwrap();
            ok &= r.verdict.is_success() && residual(&r) < RESIDUAL;
            if r.verdict == Verdict::Pass && !is_unit_alpha(&r) {
                nontrivial += 1;
                worst = worst.max(residual(&r));
            }
        }
        ok &= nontrivial >= 4;
        counts.push(format!("{id}:{nontrivial}"));
    }
    let took = start.elapsed();
    ok &= took < Duration::from_secs(120);
    outcome(ok, format!("non-trivial points [{}], max residual {worst:.3e}, {}", counts.join(" "), fmt_time(took)))
}

fn criterion_4(cfg: &RunConfig) -> Outcome {
    let mut ok = true;
    let mut worst = 0f64;
    for n in [1, 2] {
        for theta in ["pi/6", "pi/4"] {
            let r = run_identity("sec8-unit", &params(&format!("N={n} theta={theta} y=1/2")), cfg).unwrap();
            ok &= r.verdict == Verdict::Pass && num(&r.abs_err) < RESIDUAL;
            worst = worst.max(num(&r.abs_err));
        }
    }
    outcome(ok, format!("4 points, max |f - 1| {worst:.3e}"))
}

fn criterion_5(cfg: &RunConfig) -> Outcome {
    let bound = 2f64.powi(-240);
    let families = [
        ("rec10", ["2", "2.5", "4"]),
        ("rec11", ["2.2", "3", "5"]),
        ("rec12", ["1", "1.5", "3"]),
        ("rec13", ["2", "2.5", "4"]),
        ("rec14", ["2.1", "2.5", "4"]),
    ];
    let start = Instant::now();
    let mut ok = true;
    let mut cases = 0;
    let mut worst = 0f64;
    for (id, xs) in families {
        for x in xs {
            let grid = vec![
                ("n".to_string(), (1..=12).map(|v: u32| v.to_string()).collect::<Vec<_>>()),
                ("m".to_string(), (1..=12).map(|v: u32| v.to_string()).collect()),
            ];
            let fixed = params(&format!("x={x}"));
            for r in sweep(id, &grid, &fixed, cfg).unwrap() {
                let (n, m) = (num(&r.params["n"]), num(&r.params["m"]));
                if n >= m {
                    continue;
                }
                cases += 1;
                let rel = num(&r.rel_err);
                ok &= r.verdict == Verdict::Pass && rel < bound;
                worst = worst.max(rel);
            }
        }
    }
    let took = start.elapsed();
    ok &= cases == 5 * 3 * 66 && took < Duration::from_secs(30);
    outcome(ok, format!("{cases} cases, max rel {worst:.3e} (bound {bound:.3e}), {}", fmt_time(took)))
}

fn criterion_6(cfg: &RunConfig) -> Outcome {
    let bound = 2f64.powi(-240);
    let mut rng = StdRng::seed_from_u64(0x5eed_1e33);
    let mut ok = true;
    let mut cases = 0;
    let mut worst = 0f64;
    let mut check = |id: &str, p: String| {
        let r = run_identity(id, &params(&p), cfg).unwrap();
        let rel = num(&r.rel_err);
        worst = worst.max(rel);
        cases += 1;
        r.verdict == Verdict::Pass && rel < bound
    };
    for _ in 0..20 {
        let m: u32 = rng.gen_range(2..=16);
        let a: f64 = rng.gen_range(-4.0..4.0);
        let y: f64 = rng.gen_range(-3.2..3.2);
        ok &= check("lemma18", format!("m={m} alpha={a}"));
        let a21 = if a.abs() < 1e-3 { 0.5 } else { a };
        ok &= check("lemma21", format!("m={m} alpha={a21}"));
        ok &= check("lemma-half", format!("n={m}"));
        ok &= check("lemma-shift", format!("m={m} alpha={a} y={y}"));
    }
    for m in 1..=16u32 {
        ok &= check("lemma18", format!("m={m} alpha=0.75"));
        ok &= check("lemma-half", format!("n={m}"));
        ok &= check("lemma-shift", format!("m={m} alpha=0.75 y=0.5"));
        if m >= 2 {
            ok &= check("lemma21", format!("m={m} alpha=0.75"));
        }
    }
    outcome(ok, format!("{cases} cases, max rel {worst:.3e} (bound {bound:.3e})"))
}

fn criterion_7(ctx: &PrecisionContext) -> Outcome {
    let start = Instant::now();
    let beta = Float::with_val(ctx.bits(), 1u32);
    let table = continuum_limit_experiment(Ratio::new(2, 1).unwrap(), &beta, &[8, 16, 32, 64], ctx).unwrap();
    let down = |f: fn(&prodxform_core::lattice::ContinuumRow) -> &Float| {
        table.rows.windows(2).all(|w| f(&w[1]) < f(&w[0]))
    };
    let monotone = down(|r| &r.tanh_alpha_err) && down(|r| &r.tanh_beta_err) && down(|r| &r.sinh_ratio_err);
    let pi = Float::with_val(ctx.bits(), rug::float::Constant::Pi);
    let target = (Float::with_val(ctx.bits(), &pi / 2u32).tanh() / pi.tanh()).sqrt();
    let last = table.rows.last().unwrap();
    let gap = Float::with_val(ctx.bits(), &last.sinh_ratio - &target).abs().to_f64();
    let took = start.elapsed();
    let ok = monotone && gap < 1e-2 && took < Duration::from_secs(60);
    outcome(ok, format!("strictly decreasing errors: {monotone}, distance at n=64 {gap:.3e}, {}", fmt_time(took)))
}

fn criterion_8(ctx: &PrecisionContext) -> Outcome {
    let prec = ctx.bits();
    let alpha = Float::with_val(prec, 2u32);
    let eq1 = product_eq1(&alpha, ctx).unwrap();
    let eq4 = dedekind_eta_eq4(&alpha, ctx).unwrap();
    // P(alpha)/P(1/alpha) with P(t) = prod (1 - e^(-2 pi t n)), read off the eta sides
    let pi = Float::with_val(prec, rug::float::Constant::Pi);
    let shift = Float::with_val(prec, &pi * 1.5f64) / 12u32;
    let eta_ratio = Float::with_val(prec, &eq4.lhs.value / &eq4.rhs.value) * shift.exp() / alpha.clone().sqrt();
    let diff = |a: &Float, b: &Float| Float::with_val(prec, a - b).abs().to_f64();
    let mut r8 = Vec::new();
    let mut r11 = Vec::new();
    for b in [1e-3, 1e-4, 1e-5] {
        let beta = Float::with_val(prec, b);
        let p8 = product_eq8(&alpha, &beta, ctx).unwrap();
        r8.push(diff(&p8.lhs.value, &eq1.lhs.value).max(diff(&p8.rhs.value, &eq1.rhs.value)));
        r11.push(diff(&dedekind_gen_eq11(&alpha, &beta, ctx).unwrap().lhs.value, &eta_ratio));
    }
    let dec = |v: &[f64]| v.windows(2).all(|w| w[1] < w[0]);
    let ok = dec(&r8) && dec(&r11);
    let show = |v: &[f64]| v.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(" > ");
    outcome(ok, format!("eq8 vs eq1 {}, eq11 vs eq4 {}", show(&r8), show(&r11)))
}

fn criterion_9() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_prodxform"))
            .arg("suite")
            .env_remove("PRODXFORM_BITS")
            .output()
            .expect("suite binary runs")
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && b.status.success() && !a.stdout.is_empty() && a.stdout == b.stdout;
    // the in-process suite must agree with the binary too
    let lib = prodxform::to_json(&suite(&RunConfig::default()).unwrap()).unwrap();
    let ok = ok && lib.as_bytes() == a.stdout.as_slice();
    outcome(ok, format!("two runs of {} bytes, identical: {ok}", a.stdout.len()))
}

fn main() -> ExitCode {
    let cfg = RunConfig::default();
    let ctx = cfg.ctx.clone();
    let results: Vec<Outcome> = vec![
        criterion_1(&cfg),
        criterion_2(&cfg),
        criterion_3(&cfg),
        criterion_4(&cfg),
        criterion_5(&cfg),
        criterion_6(&cfg),
        criterion_7(&ctx),
        criterion_8(&ctx),
        criterion_9(),
    ];
    let mut all = true;
    for (i, r) in results.iter().enumerate() {
        all &= r.pass;
        println!("criterion {}: {} {}", i + 1, if r.pass { "PASS" } else { "FAIL" }, r.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
