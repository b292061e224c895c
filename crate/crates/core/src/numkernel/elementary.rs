use rug::float::Constant;
use rug::Float;

use super::PrecisionContext;
use crate::error::{Error, Result};

/// Inverse hyperbolic cosine for `u >= 1`.
///
/// Evaluated as `log1p(d + sqrt(d (2 + d)))` with `d = u - 1`, which keeps
/// full relative accuracy as `u -> 1`. A negative `d` means the caller asked
/// for a cosh value below one.
pub fn arccosh_stable(u: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if u.is_nan() || *u < 1u32 {
        return Err(Error::Domain(format!(
            "arccosh argument {} is below 1",
            u.to_string_radix(10, Some(20))
        )));
    }
    let delta = ctx.float(u - 1u32);
    Ok(arccosh_excess(&delta))
}

/// `arccosh(1 + delta)` for `delta >= 0`, given the excess directly.
///
/// Callers that can form `delta` without cancellation (for example as
/// `(x - 2) + 2 sin^2(phi/2)`) should use this instead of
/// [`arccosh_stable`].
pub fn arccosh_excess(delta: &Float) -> Float {
    debug_assert!(*delta >= 0u32, "negative excess");
    let prec = delta.prec();
    let mut r = Float::with_val(prec, delta + 2u32);
    r *= delta;
    r.sqrt_mut();
    r += delta;
    r.ln_1p_mut();
    r
}

/// Quadratic-residue character modulo 5: `+1` on residues {1, 4}, `-1` on
/// {2, 3}, `0` on multiples of 5.
pub fn legendre_symbol_5(n: i64) -> i8 {
    match n.rem_euclid(5) {
        0 => 0,
        1 | 4 => 1,
        _ => -1,
    }
}

/// `ln(1 - e^(-x))` for `x > 0`.
pub fn ln1m_exp_neg(x: &Float) -> Float {
    let prec = x.prec();
    let ln2 = Float::with_val(prec, Constant::Log2);
    let neg = Float::with_val(prec, -x);
    if *x < ln2 {
        // 1 - e^(-x) = -expm1(-x), no cancellation for small x
        let mut r = neg.exp_m1();
        r = -r;
        r.ln()
    } else {
        let mut e = neg.exp();
        e = -e;
        e.ln_1p()
    }
}

/// `ln(1 + e^(-x))`.
pub fn ln1p_exp_neg(x: &Float) -> Float {
    let prec = x.prec();
    let e = Float::with_val(prec, -x).exp();
    e.ln_1p()
}

/// `ln(tanh(x/2)) = ln((1 - e^(-x)) / (1 + e^(-x)))` for `x > 0`.
pub fn ln_tanh_half(x: &Float) -> Float {
    ln1m_exp_neg(x) - ln1p_exp_neg(x)
}
