use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prodxform::{
    context_for, emit_report, list_identities, parse_assignment, parse_ratio, parse_real, run_identity, suite,
    sweep, Destination, Format, HarnessError, HarnessResult, IdentityReport, RunConfig,
};
use prodxform_core::lattice::continuum_limit_experiment;
use prodxform_core::Float;
use serde::Serialize;

const BITS_ENV: &str = "PRODXFORM_BITS";
const DEFAULT_BITS: u32 = 256;

#[derive(Parser)]
#[command(name = "prodxform", version, about = "Verify product and series transformation identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the identity registry.
    List,
    /// Evaluate one identity at one parameter point.
    Verify {
        #[arg(long)]
        id: String,
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate one identity over a Cartesian grid.
    Sweep {
        #[arg(long)]
        id: String,
        #[arg(long = "grid", value_name = "K=V1,V2,...")]
        grid: Vec<String>,
        /// Parameters held fixed across the grid.
        #[arg(long = "param", value_name = "K=V")]
        params: Vec<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Run the finite-lattice continuum limit experiment.
    Converge {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, value_delimiter = ',', default_value = "8,16,32,64")]
        n: Vec<u32>,
        #[arg(long)]
        bits: Option<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every identity on its canonical grid.
    Suite {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = OutFormat::Json)]
    format: OutFormat,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock milliseconds in each report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Json,
    Csv,
}

fn resolve_bits(flag: Option<u32>) -> HarnessResult<u32> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BITS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .ok()
            .filter(|b| *b > 0)
            .ok_or_else(|| HarnessError::Context(format!("{BITS_ENV} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BITS),
    }
}

fn destination(out: &Option<PathBuf>) -> Destination {
    out.clone().map_or(Destination::Stdout, Destination::File)
}

fn config(common: &Common) -> HarnessResult<RunConfig> {
    let ctx = context_for(resolve_bits(common.bits)?, None)?;
    Ok(RunConfig { ctx, tol: common.tol, timing: common.timing, ..RunConfig::default() })
}

fn assignments(items: &[String]) -> HarnessResult<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for item in items {
        let (k, v) = parse_assignment(item)?;
        if map.insert(k.clone(), v).is_some() {
            return Err(HarnessError::MalformedParam(format!("{k} given more than once")));
        }
    }
    Ok(map)
}

fn emit(reports: &[IdentityReport], common: &Common) -> HarnessResult<bool> {
    let format = match common.format {
        OutFormat::Json => Format::Json,
        OutFormat::Csv => Format::Csv,
    };
    emit_report(reports, format, &destination(&common.out))?;
    Ok(reports.iter().all(|r| r.verdict.is_success()))
}

#[derive(Serialize)]
struct ConvergeRow {
    n: u32,
    m: u32,
    x: String,
    tanh_alpha_err: String,
    tanh_beta_err: String,
    sinh_ratio_err: String,
    sinh_ratio_closed_form_residual: String,
    reciprocity_residual: String,
}

#[derive(Serialize)]
struct ConvergeReport {
    alpha: String,
    beta: String,
    tanh_alpha_target: String,
    tanh_beta_target: String,
    sinh_ratio_target: String,
    monotone: bool,
    within_tol: bool,
    rows: Vec<ConvergeRow>,
}

fn converge(alpha: &str, beta: &str, n: &[u32], bits: Option<u32>, out: &Option<PathBuf>) -> HarnessResult<bool> {
    let ctx = context_for(resolve_bits(bits)?, None)?;
    let alpha = parse_ratio(alpha)?;
    let beta = parse_real(beta, ctx.bits())?;
    let table = continuum_limit_experiment(alpha, &beta, n, &ctx).map_err(|e| HarnessError::Context(e.to_string()))?;
    let s = |v: &Float| v.to_string_radix(10, Some(12));
    let strictly_down = |f: fn(&prodxform_core::lattice::ContinuumRow) -> &Float| {
        table.rows.windows(2).all(|w| f(&w[1]) < f(&w[0]))
    };
    let monotone = strictly_down(|r| &r.tanh_alpha_err)
        && strictly_down(|r| &r.tanh_beta_err)
        && strictly_down(|r| &r.sinh_ratio_err);
    let exact = ctx.exact_tol();
    let within_tol = table
        .rows
        .iter()
        .all(|r| r.sinh_ratio_closed_form_residual <= exact && r.reciprocity_residual <= exact);
    let report = ConvergeReport {
        alpha: format!("{}/{}", table.alpha.num, table.alpha.den),
        beta: table.beta.to_string_radix(10, None),
        tanh_alpha_target: table.tanh_alpha_target.to_string_radix(10, Some(30)),
        tanh_beta_target: table.tanh_beta_target.to_string_radix(10, Some(30)),
        sinh_ratio_target: table.sinh_ratio_target.to_string_radix(10, Some(30)),
        monotone,
        within_tol,
        rows: table
            .rows
            .iter()
            .map(|r| ConvergeRow {
                n: r.n,
                m: r.m,
                x: r.x.to_string_radix(10, Some(30)),
                tanh_alpha_err: s(&r.tanh_alpha_err),
                tanh_beta_err: s(&r.tanh_beta_err),
                sinh_ratio_err: s(&r.sinh_ratio_err),
                sinh_ratio_closed_form_residual: s(&r.sinh_ratio_closed_form_residual),
                reciprocity_residual: s(&r.reciprocity_residual),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(|e| HarnessError::Encode(e.to_string()))?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(monotone && within_tol)
}

fn list() -> bool {
    for d in list_identities() {
        let params: Vec<String> = d.params.iter().map(|p| format!("{} in {}", p.name, p.range)).collect();
        println!("{}\t{}\t{}", d.identity_id, params.join("; "), d.citation);
    }
    true
}

fn run(cli: Cli) -> HarnessResult<bool> {
    match cli.command {
        Command::List => Ok(list()),
        Command::Verify { id, params, common } => {
            let cfg = config(&common)?;
            let report = run_identity(&id, &assignments(&params)?, &cfg)?;
            emit(&[report], &common)
        }
        Command::Sweep { id, grid, params, common } => {
            let cfg = config(&common)?;
            let mut axes = Vec::new();
            for item in &grid {
                let (k, v) = parse_assignment(item)?;
                let values = v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect();
                axes.push((k, values));
            }
            let reports = sweep(&id, &axes, &assignments(&params)?, &cfg)?;
            emit(&reports, &common)
        }
        Command::Converge { alpha, beta, n, bits, out } => converge(&alpha, &beta, &n, bits, &out),
        Command::Suite { common } => {
            let cfg = config(&common)?;
            emit(&suite(&cfg)?, &common)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("prodxform: {e}");
            ExitCode::from(2)
        }
    }
}
