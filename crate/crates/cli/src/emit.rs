use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;

use crate::error::{HarnessError, HarnessResult};
use crate::report::IdentityReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

/// Pretty-printed JSON array with a trailing newline.
pub fn to_json(reports: &[IdentityReport]) -> HarnessResult<String> {
    let mut s = serde_json::to_string_pretty(reports).map_err(|e| HarnessError::Encode(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub fn parse_json(text: &str) -> HarnessResult<Vec<IdentityReport>> {
    serde_json::from_str(text).map_err(|e| HarnessError::Encode(e.to_string()))
}

/// Header plus one row per report; parameters become `param.<name>`
/// columns over the union of names, empty where a report lacks one.
pub fn to_csv(reports: &[IdentityReport]) -> HarnessResult<String> {
    let names: BTreeSet<&str> = reports.iter().flat_map(|r| r.params.keys().map(String::as_str)).collect();
    let mut w = csv::WriterBuilder::new().quote_style(csv::QuoteStyle::Necessary).from_writer(Vec::new());
    let mut header = vec!["identity_id".to_string()];
    header.extend(names.iter().map(|n| format!("param.{n}")));
    header.extend(
        ["lhs", "rhs", "abs_err", "rel_err", "tol", "tail_bound", "verdict", "terms_used", "precision_bits", "runtime_ms", "message"]
            .map(String::from),
    );
    let enc = |e: csv::Error| HarnessError::Encode(e.to_string());
    w.write_record(&header).map_err(enc)?;
    for r in reports {
        let mut row = vec![r.identity_id.clone()];
        row.extend(names.iter().map(|n| r.params.get(*n).cloned().unwrap_or_default()));
        row.extend([
            r.lhs.clone(),
            r.rhs.clone(),
            r.abs_err.clone(),
            r.rel_err.clone(),
            r.tol.clone(),
            r.tail_bound.clone(),
            r.verdict.as_str().to_string(),
            r.terms_used.to_string(),
            r.precision_bits.to_string(),
            r.runtime_ms.to_string(),
            r.message.clone(),
        ]);
        w.write_record(&row).map_err(enc)?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Encode(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| HarnessError::Encode(e.to_string()))
}

pub fn emit_report(reports: &[IdentityReport], format: Format, destination: &Destination) -> HarnessResult<()> {
    let text = match format {
        Format::Json => to_json(reports)?,
        Format::Csv => to_csv(reports)?,
    };
    match destination {
        Destination::Stdout => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Destination::File(path) => std::fs::write(path, text)?,
    }
    Ok(())
}
