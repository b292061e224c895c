use rug::ops::PowAssign;
use rug::Float;

use super::PrecisionContext;
use crate::error::{Error, Result};

/// A truncated sum together with a bound on what was left out.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: Float,
    pub terms_used: u64,
    pub tail_bound: Float,
}

impl SeriesResult {
    /// A closed-form value with no truncation.
    pub fn exact(value: Float) -> Self {
        let prec = value.prec();
        Self { value, terms_used: 1, tail_bound: Float::new(prec) }
    }

    /// Sum of two results; bounds add.
    pub fn plus(&self, other: &SeriesResult) -> SeriesResult {
        let prec = self.value.prec();
        SeriesResult {
            value: Float::with_val(prec, &self.value + &other.value),
            terms_used: self.terms_used + other.terms_used,
            tail_bound: Float::with_val(prec, &self.tail_bound + &other.tail_bound),
        }
    }

    /// `c * self`; the bound scales by `|c|`.
    pub fn scaled(&self, c: &Float) -> SeriesResult {
        let prec = self.value.prec();
        SeriesResult {
            value: Float::with_val(prec, &self.value * c),
            terms_used: self.terms_used,
            tail_bound: Float::with_val(prec, &self.tail_bound * c).abs(),
        }
    }

    /// `self + c` for an exact constant `c`.
    pub fn shifted(&self, c: &Float) -> SeriesResult {
        let prec = self.value.prec();
        SeriesResult {
            value: Float::with_val(prec, &self.value + c),
            terms_used: self.terms_used,
            tail_bound: self.tail_bound.clone(),
        }
    }

    pub fn tail_f64(&self) -> f64 {
        self.tail_bound.to_f64()
    }
}

/// Exponential majorant `|term(n)| <= amp * e^(-rate * n)` for
/// `n >= valid_from`. Also used as the decay envelope of integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Envelope {
    pub amp: f64,
    pub rate: f64,
    pub valid_from: f64,
}

impl Envelope {
    pub fn new(amp: f64, rate: f64) -> Self {
        Self { amp, rate, valid_from: 0.0 }
    }

    pub fn valid_from(mut self, from: f64) -> Self {
        self.valid_from = from;
        self
    }

    /// Envelope for `F(v)` with `v <= scale * e^(-rate n)` and
    /// `|F(v)| <= lipschitz * v` whenever `v <= 1/2`. The envelope starts at
    /// the first index where `scale * e^(-rate n) <= 1/2`.
    pub fn from_small_argument(scale: f64, rate: f64, lipschitz: f64) -> Self {
        let from = ((2.0 * scale).ln() / rate).ceil().max(0.0);
        Self { amp: lipschitz * scale, rate, valid_from: from }
    }

    pub fn bound_at(&self, x: &Float) -> Float {
        let prec = x.prec();
        let mut e = Float::with_val(prec, x * -self.rate);
        e.exp_mut();
        e * self.amp
    }

    /// `sum_{n >= from} amp e^(-rate n)`.
    pub fn series_tail(&self, from: u64, prec: u32) -> Float {
        let geometric = 1.0 - (-self.rate).exp();
        let mut t = Float::with_val(prec, -self.rate);
        t *= from;
        t.exp_mut();
        t * (self.amp / geometric)
    }

    /// `int_{x}^inf amp e^(-rate t) dt`.
    pub fn integral_tail(&self, x: f64, prec: u32) -> Float {
        let mut t = Float::with_val(prec, -self.rate * x);
        t.exp_mut();
        t * (self.amp / self.rate)
    }
}

const MONOTONE_WINDOW: usize = 16;

struct IncreaseTracker {
    prev: Option<Float>,
    run: usize,
}

impl IncreaseTracker {
    fn new() -> Self {
        Self { prev: None, run: 0 }
    }

    fn push(&mut self, magnitude: Float) {
        if let Some(p) = &self.prev {
            if magnitude > *p {
                self.run += 1;
            } else {
                self.run = 0;
            }
        }
        self.prev = Some(magnitude);
    }

    fn persistent(&self) -> bool {
        self.run >= MONOTONE_WINDOW
    }
}

fn exhausted(tracker: &IncreaseTracker, index: u64, tail: &Float) -> Error {
    if tracker.persistent() {
        Error::Monotonicity { index }
    } else {
        Error::NonConvergence { terms: index, tail: tail.to_string_radix(10, Some(6)) }
    }
}

/// Sums an alternating series `sum_{n >= start} term(n)` (signs included in
/// `term`) by consecutive pairs `(n, n+1)`.
///
/// Stops once the first omitted term is below `tail_tol` and the next one is
/// no larger; that first omitted magnitude is the reported tail bound.
pub fn sum_alternating<F>(
    start: u64,
    mut term: F,
    tail_tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> Float,
{
    let prec = ctx.bits();
    let mut sum = Float::new(prec);
    let mut tracker = IncreaseTracker::new();
    let mut n = start;
    let mut pending = term(n);
    loop {
        let second = term(n + 1);
        tracker.push(Float::with_val(prec, pending.abs_ref()));
        tracker.push(Float::with_val(prec, second.abs_ref()));
        sum += &pending;
        sum += &second;
        n += 2;
        let next = term(n);
        let next_abs = Float::with_val(prec, next.abs_ref());
        if next_abs <= tail_tol {
            let after = term(n + 1);
            if Float::with_val(prec, after.abs_ref()) <= next_abs {
                return Ok(SeriesResult { value: sum, terms_used: n - start, tail_bound: next_abs });
            }
        }
        if n - start >= ctx.max_terms() {
            return Err(exhausted(&tracker, n, &next_abs));
        }
        pending = next;
    }
}

/// Sums single-signed terms whose magnitudes contract at least by
/// `r = e^(-decay_rate)` per step in the tail.
///
/// Stops at the first `N` with `|t(N+1)| <= r |t(N)|` and
/// `|t(N+1)| / (1 - r) <= tail_tol`; the geometric majorant is the tail
/// bound.
pub fn sum_positive_decay<F>(
    start: u64,
    mut term: F,
    decay_rate: f64,
    tail_tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> Float,
{
    if !(decay_rate > 0.0) {
        return Err(Error::Domain(format!("decay rate {decay_rate} must be positive")));
    }
    let prec = ctx.bits();
    // slack so an exactly geometric series is not rejected by f64 rounding
    let ratio = (-decay_rate).exp() * (1.0 + 1e-12);
    if ratio >= 1.0 {
        return Err(Error::Domain(format!("decay rate {decay_rate} too small")));
    }
    let inv_gap = 1.0 / (1.0 - ratio);
    let mut sum = Float::new(prec);
    let mut sign: Option<bool> = None;
    let mut tracker = IncreaseTracker::new();
    let mut n = start;
    let mut cur = term(n);
    loop {
        if !cur.is_zero() {
            let neg = cur.is_sign_negative();
            match sign {
                None => sign = Some(neg),
                Some(s) if s != neg => {
                    return Err(Error::Domain(format!("term {n} changes sign in a one-signed series")))
                }
                _ => {}
            }
        }
        let cur_abs = Float::with_val(prec, cur.abs_ref());
        tracker.push(cur_abs.clone());
        sum += &cur;
        let next = term(n + 1);
        let next_abs = Float::with_val(prec, next.abs_ref());
        let tail = Float::with_val(prec, &next_abs * inv_gap);
        if next_abs <= Float::with_val(prec, &cur_abs * ratio) && tail <= tail_tol {
            return Ok(SeriesResult { value: sum, terms_used: n + 1 - start, tail_bound: tail });
        }
        n += 1;
        if n - start >= ctx.max_terms() {
            return Err(exhausted(&tracker, n, &tail));
        }
        cur = next;
    }
}

/// Sums `term(n)` for `n >= start` using a caller-declared exponential
/// envelope to fix the truncation point in advance.
///
/// The envelope is spot-checked on the last evaluated terms; a term above
/// it is reported as [`Error::Envelope`].
pub fn sum_enveloped<F>(
    start: u64,
    mut term: F,
    envelope: &Envelope,
    tail_tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> Float,
{
    if !(envelope.rate > 0.0) || !(envelope.amp >= 0.0) {
        return Err(Error::Domain(format!("invalid envelope {envelope:?}")));
    }
    let prec = ctx.bits();
    let geometric = 1.0 - (-envelope.rate).exp();
    let needed = ((envelope.amp / (geometric * tail_tol)).ln() / envelope.rate).ceil();
    let lower = (start as f64).max(envelope.valid_from.ceil());
    let end = needed.max(lower).max(start as f64 + 1.0);
    if end - start as f64 > ctx.max_terms() as f64 {
        return Err(Error::NonConvergence {
            terms: ctx.max_terms(),
            tail: format!("{:e}", envelope.amp),
        });
    }
    let end = end as u64;
    let check_from = end.saturating_sub(4).max(lower as u64);
    let mut sum = Float::new(prec);
    for n in start..end {
        let t = term(n);
        if n >= check_from {
            let bound = envelope.bound_at(&Float::with_val(prec, n));
            let slack = Float::with_val(prec, &bound * (1.0 + 1e-9));
            if Float::with_val(prec, t.abs_ref()) > slack {
                return Err(Error::Envelope {
                    at: format!("n = {n}"),
                    value: t.to_string_radix(10, Some(8)),
                    bound: bound.to_string_radix(10, Some(8)),
                });
            }
        }
        sum += &t;
    }
    Ok(SeriesResult {
        value: sum,
        terms_used: end - start,
        tail_bound: envelope.series_tail(end, prec),
    })
}

// Cohen, Rodriguez Villegas and Zagier, "Convergence acceleration of
// alternating series", Algorithm 1.
fn crvz(values: &[Float], n: usize, prec: u32) -> Float {
    let mut d = Float::with_val(prec, 8u32);
    d.sqrt_mut();
    d += 3u32;
    d.pow_assign(n as u32);
    let inv = Float::with_val(prec, d.recip_ref());
    d += &inv;
    d /= 2u32;
    let mut b = Float::with_val(prec, -1);
    let mut c = Float::with_val(prec, -&d);
    let mut s = Float::new(prec);
    let nn = n as i64;
    for (k, a) in values.iter().take(n).enumerate() {
        let k = k as i64;
        c = Float::with_val(prec, &b - &c);
        s += Float::with_val(prec, &c * a);
        b *= (k + nn) * (k - nn);
        b /= Float::with_val(prec, k as f64 + 0.5) * (k + 1);
    }
    s / d
}

/// Accelerated sum of `sum_{k >= 0} (-1)^k a(k)` for a smooth,
/// slowly decaying `a` (sign not included in `a`).
///
/// The estimate after `N` terms is compared with the one after `N - 8`
/// terms; their difference is the reported tail bound, which over-covers
/// the error of the `N`-term estimate for geometrically converging input.
pub fn sum_alternating_accelerated<F>(
    mut a: F,
    tail_tol: f64,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(u64) -> Float,
{
    const LAG: usize = 8;
    let prec = ctx.bits() + 16;
    let mut values: Vec<Float> = Vec::new();
    let mut fill = |upto: usize, values: &mut Vec<Float>| {
        while values.len() < upto {
            let k = values.len() as u64;
            values.push(Float::with_val(prec, a(k)));
        }
    };
    fill(2, &mut values);
    let scale = values[0].to_f64().abs().max(values[1].to_f64().abs());
    if scale == 0.0 {
        fill(LAG + 2, &mut values);
        let all_zero = values.iter().all(|v| v.is_zero());
        if all_zero {
            return Ok(SeriesResult {
                value: Float::new(ctx.bits()),
                terms_used: values.len() as u64,
                tail_bound: Float::new(ctx.bits()),
            });
        }
    }
    let rate = (3.0 + 8f64.sqrt()).ln();
    let scale = if scale > 0.0 { scale } else { 1.0 };
    let mut n = LAG + 4 + ((2.0 * scale / tail_tol).ln() / rate).ceil().max(0.0) as usize;
    loop {
        if n as u64 > ctx.max_terms() {
            return Err(Error::NonConvergence { terms: ctx.max_terms(), tail: "n/a".into() });
        }
        fill(n, &mut values);
        let full = crvz(&values, n, prec);
        let lagged = crvz(&values, n - LAG, prec);
        let diff = Float::with_val(ctx.bits(), &full - &lagged).abs();
        if diff <= tail_tol {
            return Ok(SeriesResult {
                value: Float::with_val(ctx.bits(), &full),
                terms_used: n as u64,
                tail_bound: diff,
            });
        }
        n += n / 2;
    }
}
