use rug::Float;

use super::series::{sum_alternating, sum_enveloped, sum_positive_decay, Envelope, SeriesResult};
use super::PrecisionContext;
use crate::error::Result;

/// How the log-series of a product is summed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Summation {
    /// Alternating signs with monotone magnitudes from `start`.
    Alternating { start: u64 },
    /// One-signed terms contracting by `e^(-rate)` per step.
    PositiveDecay { start: u64, rate: f64 },
    /// Arbitrary signs under an exponential majorant.
    Enveloped { start: u64, envelope: Envelope },
}

/// `exp(S)` for a summed log-series `S`. The relative bound `e^tail - 1`
/// becomes an absolute bound on the product.
pub fn exp_of_log_sum(log_sum: &SeriesResult) -> SeriesResult {
    let prec = log_sum.value.prec();
    let value = Float::with_val(prec, log_sum.value.exp_ref());
    let rel = Float::with_val(prec, log_sum.tail_bound.exp_m1_ref());
    let tail_bound = Float::with_val(prec, &value * &rel).abs();
    SeriesResult { value, terms_used: log_sum.terms_used, tail_bound }
}

/// `prod_n exp(log_terms(n))`, accumulated in log space.
pub fn product_from_log_terms<F>(
    log_terms: F,
    summation: Summation,
    tail_tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> Float,
{
    let log_sum = match summation {
        Summation::Alternating { start } => sum_alternating(start, log_terms, tail_tol, ctx)?,
        Summation::PositiveDecay { start, rate } => {
            sum_positive_decay(start, log_terms, rate, tail_tol, ctx)?
        }
        Summation::Enveloped { start, envelope } => {
            sum_enveloped(start, log_terms, &envelope, tail_tol, ctx)?
        }
    };
    Ok(exp_of_log_sum(&log_sum))
}
