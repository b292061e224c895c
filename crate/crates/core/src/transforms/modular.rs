use rug::Float;

use super::{check_non_negative, check_positive, is_one, signed, IdentityPair};
use crate::error::Result;
use crate::numkernel::{
    exp_of_log_sum, legendre_symbol_5, ln1m_exp_neg, ln_tanh_half, sum_alternating, sum_enveloped,
    sum_positive_decay, Envelope, PrecisionContext, SeriesResult,
};

/// `sum_{n>=1} (-1)^n n / sinh(c n)`.
fn alternating_n_over_sinh(c: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    sum_alternating(1, |n| {
        let mut s = Float::with_val(prec, c * n);
        s.sinh_mut();
        signed(n, Float::with_val(prec, n) / s)
    }, ctx.tail_tol(), ctx)
}

/// The two sums of the series transformation separately:
/// `sum n(-1)^n / sinh(pi alpha n)` and
/// `alpha^-2 sum n (-1)^n / sinh(pi n / alpha)`.
///
/// The second sum carries `n`, not `alpha n`: only this weighting closes
/// against `-1/(2 pi alpha)` away from `alpha = 1`.
pub fn series_transform_eq2_parts(
    alpha: &Float,
    ctx: &PrecisionContext,
) -> Result<(SeriesResult, SeriesResult)> {
    check_positive("alpha", alpha)?;
    let pi = ctx.pi();
    let first = alternating_n_over_sinh(&ctx.float(&pi * alpha), ctx)?;
    let second = alternating_n_over_sinh(&ctx.float(&pi / alpha), ctx)?;
    let second = second.scaled(&ctx.float(alpha.recip_ref()).square());
    Ok((first, second))
}

/// Cosech series transformation; the right side is `-1/(2 pi alpha)`.
pub fn series_transform_eq2(alpha: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    let (first, second) = series_transform_eq2_parts(alpha, ctx)?;
    let lhs = first.plus(&second);
    let mut rhs = ctx.float(2u32 * ctx.pi()) * alpha;
    rhs.recip_mut();
    rhs = -rhs;
    Ok(IdentityPair::new("eq2", lhs, SeriesResult::exact(rhs)))
}

/// `sum_{n>=1} (-1)^n ln tanh(c sqrt(n^2 + b2) / 2)`: the log of
/// `prod ((1 - e^(-c sqrt(n^2+b2))) / (1 + e^(-c sqrt(n^2+b2))))^((-1)^n)`.
///
/// The magnitudes `2 artanh(e^(-c sqrt(n^2+b2)))` decrease in `n`, so the
/// pair-summation bound applies.
pub(crate) fn alternating_log_tanh(c: &Float, b2: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    sum_alternating(1, |n| {
        let mut r = Float::with_val(prec, n * n);
        r += b2;
        r.sqrt_mut();
        r *= c;
        signed(n, ln_tanh_half(&r))
    }, ctx.tail_tol(), ctx)
}

/// `prod ((1-q^n)/(1+q^n))^((-1)^n)` at `q = e^(-pi alpha)` against
/// `alpha^(-1/2)` times the same product at `1/alpha`.
pub fn product_eq1(alpha: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    check_positive("alpha", alpha)?;
    let pi = ctx.pi();
    let zero = ctx.float(0);
    let log_lhs = alternating_log_tanh(&ctx.float(&pi * alpha), &zero, ctx)?;
    let log_rhs = alternating_log_tanh(&ctx.float(&pi / alpha), &zero, ctx)?;
    let prefactor = -ctx.float(alpha.ln_ref()) / 2u32;
    let log_rhs = log_rhs.shifted(&prefactor);
    Ok(IdentityPair::new("eq1", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}

/// `sum_{n>=1} ln(1 - e^(-c n))`. Successive terms contract by at least
/// `e^(-c)` because `-ln(1-v)/v` increases with `v`.
fn eta_log_sum(c: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    sum_positive_decay(1, |n| ln1m_exp_neg(&Float::with_val(prec, c * n)), c.to_f64(), ctx.tail_tol(), ctx)
}

/// Dedekind eta functional equation:
/// `e^(-pi alpha/12) prod (1 - e^(-2 pi alpha n))` against
/// `alpha^(-1/2) e^(-pi/(12 alpha)) prod (1 - e^(-2 pi n/alpha))`.
pub fn dedekind_eta_eq4(alpha: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    check_positive("alpha", alpha)?;
    let pi = ctx.pi();
    let two_pi = ctx.float(&pi * 2u32);
    let log_lhs = eta_log_sum(&ctx.float(&two_pi * alpha), ctx)?
        .shifted(&-(ctx.float(&pi * alpha) / 12u32));
    let mut shift = -(ctx.float(&pi / alpha) / 12u32);
    shift -= ctx.float(alpha.ln_ref()) / 2u32;
    let log_rhs = eta_log_sum(&ctx.float(&two_pi / alpha), ctx)?.shifted(&shift);
    Ok(IdentityPair::new("eq4", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}

/// `sum_{n>=1} (n/5) ln(1 - 2 sqrt5 / (1 + sqrt5 + 4 cosh(2 pi s sqrt(n^2+b2) / 5)))`.
///
/// With `w` the subtracted fraction, `w <= sqrt5 e^(-u)` and
/// `w <= 2 sqrt5/(5 + sqrt5) < 0.62`, so `|ln(1-w)| <= 2.62 w` and the terms
/// sit under `5.9 e^(-2 pi s n / 5)`.
fn legendre5_log_sum(s: &Float, b2: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    let sqrt5 = ctx.float(5u32).sqrt();
    let sqrt5_plus_1 = ctx.float(&sqrt5 + 1u32);
    let two_sqrt5 = ctx.float(&sqrt5 * 2u32);
    let scale = ctx.float(2u32 * ctx.pi()) * s / 5u32;
    let envelope = Envelope::new(5.9, scale.to_f64());
    sum_enveloped(1, |n| {
        let chi = legendre_symbol_5(n as i64);
        if chi == 0 {
            return Float::new(prec);
        }
        let mut u = Float::with_val(prec, n * n);
        u += b2;
        u.sqrt_mut();
        u *= &scale;
        let mut den = u.cosh();
        den *= 4u32;
        den += &sqrt5_plus_1;
        let w = Float::with_val(prec, &two_sqrt5 / &den);
        let v = (-w).ln_1p();
        if chi > 0 { v } else { -v }
    }, &envelope, ctx.tail_tol(), ctx)
}

/// Legendre-symbol product mod 5 with the `beta` shift, at `alpha` and
/// `1/alpha`. `beta = 0` is the modular case.
pub fn legendre5_product(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    check_positive("alpha", alpha)?;
    check_non_negative("beta", beta)?;
    let b2 = ctx.float(beta.square_ref());
    let log_lhs = legendre5_log_sum(alpha, &b2, ctx)?;
    // sqrt(n^2/alpha^2 + beta^2) = (1/alpha) sqrt(n^2 + alpha^2 beta^2)
    let inv = ctx.float(alpha.recip_ref());
    let b2_rhs = ctx.float(&b2 * alpha) * alpha;
    let log_rhs = legendre5_log_sum(&inv, &b2_rhs, ctx)?;
    Ok(IdentityPair::new("legendre5", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}
