//! Product transformations on an oblique lattice with angle `theta`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rug::Float;

use super::{check_angle, check_positive, is_one, signed, unit_logs, IdentityPair};
use crate::error::{Error, Result};
use crate::numkernel::{
    exp_of_log_sum, integrate_semi_infinite, ln1m_exp_neg, ln_tanh_half, sum_enveloped, Envelope,
    PrecisionContext, QuadSpec, SeriesResult,
};

fn validate(alpha: &Float, theta: &Float, y: &Float) -> Result<()> {
    check_positive("alpha", alpha)?;
    check_angle(theta)?;
    check_positive("y", y)
}

/// `ln((C - c)/(C + c)) = -2 artanh(c/C)`.
fn log_ratio(big: &Float, small: &Float) -> Float {
    let r = Float::with_val(big.prec(), small / big);
    r.atanh() * -2i32
}

/// `C = cosh(pi cos(theta) sqrt(h^2 alpha^2 + alpha y^2))`.
struct Oblique {
    pi_cos: Float,
    pi_sin_alpha: Float,
    a2: Float,
    ay2: Float,
}

impl Oblique {
    fn new(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Self {
        let pi = ctx.pi();
        Self {
            pi_cos: ctx.float(theta.cos_ref()) * &pi,
            pi_sin_alpha: ctx.float(theta.sin_ref()) * &pi * alpha,
            a2: ctx.float(alpha.square_ref()),
            ay2: ctx.float(y.square_ref()) * alpha,
        }
    }

    fn cosh_at(&self, h: &Float) -> Float {
        let mut r = Float::with_val(h.prec(), h.square_ref());
        r *= &self.a2;
        r += &self.ay2;
        r.sqrt_mut();
        r *= &self.pi_cos;
        r.cosh()
    }

    /// Exponential rate of `1/C` in `h`.
    fn rate(&self, alpha: &Float) -> f64 {
        self.pi_cos.to_f64() * alpha.to_f64()
    }
}

/// `sum_{n>=1} (-1)^n ln((C_n - cos(pi n alpha sin theta)) / (C_n + cos(...)))`.
///
/// The cosine makes the magnitudes oscillate, so only the envelope
/// `2 artanh(c/C) <= 2.2 / C <= 4.4 e^(-pi cos(theta) alpha n)` is used.
fn sec7_log_f(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    let ob = Oblique::new(alpha, theta, y, ctx);
    let envelope = Envelope::from_small_argument(2.0, ob.rate(alpha), 2.2);
    sum_enveloped(1, |n| {
        let h = Float::with_val(prec, n);
        let c = Float::with_val(prec, &ob.pi_sin_alpha * n).cos();
        signed(n, log_ratio(&ob.cosh_at(&h), &c))
    }, &envelope, ctx.tail_tol(), ctx)
}

/// `f(alpha) = prod_{n>=1} ((C_n - c_n)/(C_n + c_n))^((-1)^n)` against
/// `f(1/alpha)` times
/// `tanh(pi y cos(theta) / (2 sqrt(alpha))) / tanh(pi y sqrt(alpha) cos(theta) / 2)`.
pub fn oblique_product_sec7(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    validate(alpha, theta, y)?;
    let log_lhs = sec7_log_f(alpha, theta, y, ctx)?;
    let inv = ctx.float(alpha.recip_ref());
    let log_f_inv = sec7_log_f(&inv, theta, y, ctx)?;
    let sqrt_a = ctx.float(alpha.sqrt_ref());
    let pyc = ctx.float(theta.cos_ref()) * ctx.pi() * y;
    let mut shift = ln_tanh_half(&ctx.float(&pyc / &sqrt_a));
    shift -= ln_tanh_half(&ctx.float(&pyc * &sqrt_a));
    let log_rhs = log_f_inv.shifted(&shift);
    let vacuous = is_one(alpha) || unit_logs(&log_lhs.value, &log_rhs.value, ctx);
    Ok(IdentityPair::new("sec7", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(vacuous))
}

/// `sum_{n>=0} (-1)^n ln((C_h - sin(pi h alpha sin theta)) / (C_h + sin(...)))`,
/// `h = n + 1/2`.
fn sec8_log_f(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    let ob = Oblique::new(alpha, theta, y, ctx);
    let k = ob.rate(alpha);
    let envelope = Envelope::from_small_argument(2.0 * (-k / 2.0).exp(), k, 2.2);
    sum_enveloped(0, |n| {
        let h = Float::with_val(prec, n) + 0.5f64;
        let s = Float::with_val(prec, &ob.pi_sin_alpha * &h).sin();
        signed(n, log_ratio(&ob.cosh_at(&h), &s))
    }, &envelope, ctx.tail_tol(), ctx)
}

/// The half-integer product `f(alpha)`, evaluated on its own.
pub fn half_integer_f(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    validate(alpha, theta, y)?;
    Ok(exp_of_log_sum(&sec8_log_f(alpha, theta, y, ctx)?))
}

/// `f(alpha) = f(1/alpha)` for the half-integer product.
pub fn half_integer_product_sec8(alpha: &Float, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    validate(alpha, theta, y)?;
    let log_lhs = sec8_log_f(alpha, theta, y, ctx)?;
    let log_rhs = sec8_log_f(&ctx.float(alpha.recip_ref()), theta, y, ctx)?;
    let vacuous = is_one(alpha) || unit_logs(&log_lhs.value, &log_rhs.value, ctx);
    Ok(IdentityPair::new("sec8", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(vacuous))
}

/// `f(sin(theta)/(2N))` against 1. At `alpha = 2N/sin(theta)` every sine
/// vanishes, so the transformation forces the value at the reciprocal.
pub fn half_integer_unit_check(n_check: u32, theta: &Float, y: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if n_check == 0 {
        return Err(Error::Domain("N must be a positive integer".into()));
    }
    check_angle(theta)?;
    if theta.is_zero() {
        return Err(Error::Domain("theta must be positive for the unit check".into()));
    }
    let alpha = ctx.float(theta.sin_ref()) / (2 * n_check);
    let lhs = half_integer_f(&alpha, theta, y, ctx)?;
    Ok(IdentityPair::new("sec8-unit", lhs, SeriesResult::exact(ctx.float(1u32))))
}

type ConstantCache = Mutex<HashMap<(u32, u64, u32, u64), Arc<OnceLock<Result<SeriesResult>>>>>;

fn constant_cache() -> &'static ConstantCache {
    static CACHE: OnceLock<ConstantCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `C = 2 int_0^inf ln tanh(pi sqrt(t^2 + 1/4)) dt`, computed once per
/// precision context.
pub fn sec9_integral_constant(ctx: &PrecisionContext) -> Result<SeriesResult> {
    let cell = {
        let mut map = constant_cache().lock().unwrap_or_else(|e| e.into_inner());
        map.entry(ctx.cache_key()).or_default().clone()
    };
    cell.get_or_init(|| compute_sec9_constant(ctx)).clone()
}

fn compute_sec9_constant(ctx: &PrecisionContext) -> Result<SeriesResult> {
    let two_pi = ctx.float(2u32 * ctx.pi());
    let rate = 2.0 * std::f64::consts::PI;
    let spec = QuadSpec::for_decay(rate, 0.5, ctx.tail_tol());
    // |ln tanh(u)| <= 2.2 e^(-2u) and u >= pi t
    let envelope = Envelope::new(2.2, rate);
    let integral = integrate_semi_infinite(|t| {
        let mut u = Float::with_val(t.prec(), t.square_ref());
        u += 0.25f64;
        u.sqrt_mut();
        u *= &two_pi;
        ln_tanh_half(&u)
    }, &spec, &envelope, ctx)?;
    Ok(integral.scaled(&ctx.float(2u32)))
}

/// `prod_{n in Z} tanh(pi sqrt(a^2 n^2 + 1/4)) / (1 - e^(-(pi/a) sqrt(n^2+1)))^((-1)^n)`
/// against `exp(C/a)`.
pub fn asymmetric_product_sec9(a: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    check_positive("a", a)?;
    let prec = ctx.bits();
    let pi_over_a = ctx.pi() / a;
    let a2 = ctx.float(a.square_ref());
    let two_pi = ctx.float(2u32 * ctx.pi());
    let term = |n: u64| {
        let mut u = Float::with_val(prec, &a2 * (n * n));
        u += 0.25f64;
        u.sqrt_mut();
        u *= &two_pi;
        let mut v = Float::with_val(prec, n * n + 1);
        v.sqrt_mut();
        v *= &pi_over_a;
        ln_tanh_half(&u) - signed(n, ln1m_exp_neg(&v))
    };
    let af = a.to_f64();
    let pi64 = std::f64::consts::PI;
    let rate = (2.0 * pi64 * af).min(pi64 / af);
    // 2.2 e^(-2 pi a n) + 1.4 e^(-pi n / a) once both exponentials are <= 1/2
    let envelope = Envelope::new(3.6, rate).valid_from((2f64.ln() / rate).ceil());
    let rest = sum_enveloped(1, term, &envelope, ctx.tail_tol() / 2.0, ctx)?;
    let log_lhs = rest.scaled(&ctx.float(2u32)).shifted(&term(0));
    let c = sec9_integral_constant(ctx)?;
    let log_rhs = c.scaled(&ctx.float(a.recip_ref()));
    Ok(IdentityPair::new("sec9", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transforms::product_eq8;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    #[test]
    fn sec7_holds() {
        let ctx = PrecisionContext::default();
        for (a, t, y) in [(2.0, 0.3, 0.5), (0.6, 1.0, 1.0), (3.0, 0.0, 0.2)] {
            let p = oblique_product_sec7(&f(a), &f(t), &f(y), &ctx).unwrap();
            assert!(p.abs_residual() < 1e-28, "({a},{t},{y}): {}", p.abs_residual());
        }
    }

    #[test]
    fn sec7_at_zero_angle_is_eq8() {
        let ctx = PrecisionContext::default();
        let (a, y) = (f(2.0), f(0.6));
        let p7 = oblique_product_sec7(&a, &f(0.0), &y, &ctx).unwrap();
        let beta = Float::with_val(256, &y / Float::with_val(256, a.sqrt_ref()));
        let p8 = product_eq8(&a, &beta, &ctx).unwrap();
        // ((C-1)/(C+1)) = tanh^2(x/2), so the oblique product is the square
        let sq = Float::with_val(256, p8.lhs.value.square_ref());
        assert!(Float::with_val(256, &p7.lhs.value - &sq).abs() < 1e-30);
    }

    #[test]
    fn sec8_holds_and_unit_checks() {
        let ctx = PrecisionContext::default();
        for (a, t, y) in [(2.0, 0.3, 0.5), (0.6, 1.0, 1.0)] {
            let p = half_integer_product_sec8(&f(a), &f(t), &f(y), &ctx).unwrap();
            assert!(p.abs_residual() < 1e-28, "({a},{t},{y}): {}", p.abs_residual());
        }
        let theta = f(0.7);
        let y = f(0.4);
        for n in 1..=3u32 {
            let trivial = Float::with_val(256, 2 * n) / Float::with_val(256, theta.sin_ref());
            let v = half_integer_f(&trivial, &theta, &y, &ctx).unwrap();
            assert!(Float::with_val(256, &v.value - 1u32).abs() < 1e-60);
            let p = half_integer_unit_check(n, &theta, &y, &ctx).unwrap();
            assert!(p.abs_residual() < 1e-28, "N = {n}: {}", p.abs_residual());
            assert!(Float::with_val(256, &p.lhs.value - 1u32).abs() < 1e-28);
        }
    }

    #[test]
    fn sec9_constant_and_product() {
        let ctx = PrecisionContext::default();
        let c = sec9_integral_constant(&ctx).unwrap();
        let expected = Float::with_val(256, Float::parse("-0.06784983663876560725").unwrap());
        assert!(Float::with_val(256, &c.value - &expected).abs() < 1e-19);
        let again = sec9_integral_constant(&ctx).unwrap();
        assert_eq!(c, again);
        for a in [1.0, 0.5, 2.0, 0.3] {
            let p = asymmetric_product_sec9(&f(a), &ctx).unwrap();
            assert!(p.abs_residual() < 1e-28, "a = {a}: {}", p.abs_residual());
        }
    }

    #[test]
    fn oblique_domain_errors() {
        let ctx = PrecisionContext::default();
        assert!(oblique_product_sec7(&f(1.0), &f(1.6), &f(1.0), &ctx).is_err());
        assert!(oblique_product_sec7(&f(1.0), &f(0.5), &f(0.0), &ctx).is_err());
        assert!(half_integer_unit_check(0, &f(0.5), &f(1.0), &ctx).is_err());
        assert!(half_integer_unit_check(1, &f(0.0), &f(1.0), &ctx).is_err());
    }
}
