use rug::float::Constant;
use rug::Float;

use super::series::{Envelope, SeriesResult};
use super::PrecisionContext;
use crate::error::{Error, Result};

/// Parameters of a semi-infinite integral truncated to `[0, cutoff]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadSpec {
    pub rel_tol: f64,
    pub cutoff: f64,
    pub levels_max: u32,
}

impl QuadSpec {
    pub const DEFAULT_LEVELS: u32 = 12;

    /// Cutoff `ln(1/tol)/rate + beta + 10` for an integrand decaying like
    /// `e^(-rate x)` once `x` exceeds `beta`.
    pub fn for_decay(rate: f64, beta: f64, tol: f64) -> Self {
        Self {
            rel_tol: tol,
            cutoff: (1.0 / tol).ln() / rate + beta + 10.0,
            levels_max: Self::DEFAULT_LEVELS,
        }
    }
}

/// `int_0^inf f(x) dx` by tanh-sinh quadrature on `[0, cutoff]` plus an
/// envelope bound for `[cutoff, inf)`.
///
/// The step is halved level by level (reusing previous nodes) until two
/// successive estimates differ by at most `rel_tol` relative to the larger
/// of the estimate and the estimated `L1` norm. The reported bound is that
/// last change plus the envelope tail. `|f|` is checked against `envelope`
/// at nine points of `[cutoff/2, cutoff]`.
pub fn integrate_semi_infinite<F>(
    mut f: F,
    spec: &QuadSpec,
    envelope: &Envelope,
    ctx: &PrecisionContext,
) -> Result<SeriesResult>
where
    F: FnMut(&Float) -> Float,
{
    let prec = ctx.bits();
    let length = Float::with_val(prec, spec.cutoff);
    if !(spec.cutoff > 0.0) {
        return Err(Error::Domain(format!("cutoff {} must be positive", spec.cutoff)));
    }

    for i in 0..=8 {
        let x = Float::with_val(prec, spec.cutoff * (0.5 + i as f64 / 16.0));
        let fx = f(&x);
        let bound = envelope.bound_at(&x);
        if Float::with_val(prec, fx.abs_ref()) > Float::with_val(prec, &bound * (1.0 + 1e-9)) {
            return Err(Error::Envelope {
                at: format!("x = {}", x.to_f64()),
                value: fx.to_string_radix(10, Some(8)),
                bound: bound.to_string_radix(10, Some(8)),
            });
        }
    }

    let half_pi = Float::with_val(prec, Constant::Pi) / 2u32;
    // nodes closer to an endpoint than ~2^-(prec+20) * cutoff contribute nothing
    let u_max = ((prec as f64 + 20.0) * std::f64::consts::LN_2 + spec.cutoff.ln().max(0.0)) / 2.0;
    let t_max = (2.0 * u_max / std::f64::consts::PI).asinh() + 0.5;

    // contribution of the node pair at +-t: weight * (f(d) + f(L - d))
    let pair = |t: f64, f: &mut F| -> (Float, Float) {
        let t = Float::with_val(prec, t);
        let u = Float::with_val(prec, t.sinh_ref()) * &half_pi;
        let e = Float::with_val(prec, 2u32 * &u).exp();
        // d = L / (1 + e^(2u)); weight = L/2 * (pi/2) cosh t / cosh^2 u
        let d = Float::with_val(prec, &length / Float::with_val(prec, &e + 1u32));
        let mut w = Float::with_val(prec, u.cosh_ref());
        w.square_mut();
        w.recip_mut();
        w *= Float::with_val(prec, t.cosh_ref());
        w *= &half_pi;
        w *= &length;
        w /= 2u32;
        let far = Float::with_val(prec, &length - &d);
        let fa = f(&d);
        let fb = f(&far);
        let s = Float::with_val(prec, &fa + &fb) * &w;
        let l1 = (fa.abs() + fb.abs()) * w;
        (s, l1)
    };

    // level 0: h = 1 on [0, t_max]
    let mut h = 1.0f64;
    let mid = Float::with_val(prec, &length / 2u32);
    let f_mid = f(&mid);
    let w0 = Float::with_val(prec, &half_pi * &length) / 2u32;
    let mut raw = Float::with_val(prec, &f_mid * &w0);
    let mut l1_raw = Float::with_val(prec, f_mid.abs_ref()) * &w0;
    let mut k = 1.0;
    while k <= t_max {
        let (s, l1) = pair(k, &mut f);
        raw += s;
        l1_raw += l1;
        k += 1.0;
    }
    let mut estimate = Float::with_val(prec, &raw * h);
    let mut change = Float::with_val(prec, f64::INFINITY);
    for level in 1..=spec.levels_max {
        h /= 2.0;
        let mut t = h;
        while t <= t_max {
            let (s, l1) = pair(t, &mut f);
            raw += s;
            l1_raw += l1;
            t += 2.0 * h;
        }
        let next = Float::with_val(prec, &raw * h);
        change = Float::with_val(prec, &next - &estimate).abs();
        estimate = next;
        let scale = {
            let l1 = Float::with_val(prec, &l1_raw * h);
            let e = Float::with_val(prec, estimate.abs_ref());
            if l1 > e { l1 } else { e }
        };
        if level >= 3 && change <= Float::with_val(prec, &scale * spec.rel_tol) {
            let tail = envelope.integral_tail(spec.cutoff, prec);
            return Ok(SeriesResult {
                value: estimate,
                terms_used: (2.0 * t_max / h) as u64 + 1,
                tail_bound: change + tail,
            });
        }
    }
    Err(Error::Quadrature { levels: spec.levels_max, change: change.to_string_radix(10, Some(6)) })
}
