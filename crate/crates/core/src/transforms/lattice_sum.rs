//! Three representations of
//! `f(alpha, beta) = sum_{n,m in Z} (-1)^(n+m) / (pi (alpha n^2 + m^2/alpha + beta^2))`
//! and the products derived from it.

use rug::Float;

use super::modular::alternating_log_tanh;
use super::{check_positive, is_one, signed, slow_scale, IdentityPair};
use crate::error::{Error, Result};
use crate::numkernel::{
    bessel_k0, exp_of_log_sum, ln_tanh_half, sum_alternating, sum_alternating_accelerated,
    sum_enveloped, sum_positive_decay, Envelope, PrecisionContext, SeriesResult,
};

/// Single sum after the inner sum over `m` is done in closed form:
/// `t(0) + 2 sum_{n>=1} (-1)^n alpha / (u sinh(pi u))`,
/// `u = sqrt(alpha^2 n^2 + alpha beta^2)`.
pub fn f_partial_fraction(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    let prec = ctx.bits();
    let pi = ctx.pi();
    let a2 = ctx.float(alpha.square_ref());
    let ab2 = ctx.float(beta.square_ref()) * alpha;
    let term = |n: u64| {
        let mut u = Float::with_val(prec, &a2 * (n * n));
        u += &ab2;
        u.sqrt_mut();
        let mut s = Float::with_val(prec, &u * &pi);
        s.sinh_mut();
        s *= &u;
        Float::with_val(prec, alpha / &s)
    };
    let t0 = term(0);
    let rest = sum_alternating(1, |n| signed(n, term(n)), ctx.tail_tol() / 2.0, ctx)?;
    let two = ctx.float(2u32);
    Ok(rest.scaled(&two).shifted(&t0))
}

/// The defining double sum, summed over `m` with convergence acceleration
/// and then over `n` by pairs:
/// `(1/pi) [S(0) + 2 sum_{n>=1} (-1)^n S(n)]` with
/// `S(n) = sum_m (-1)^m / (alpha n^2 + beta^2 + m^2/alpha)`.
pub fn f_lattice_double_sum(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    let prec = ctx.bits();
    let inner_tol = ctx.tail_tol() / 64.0;
    let b2 = ctx.float(beta.square_ref());
    let inv_alpha = ctx.float(alpha.recip_ref());

    let mut inner_tails = ctx.float(0);
    let mut inner_terms = 0u64;
    let mut first_error: Option<Error> = None;
    let mut inner = |n: u64| -> Float {
        let mut c = Float::with_val(prec, alpha * (n * n));
        c += &b2;
        // sum_{m>=1} (-1)^m / (c + m^2/alpha) = -sum_{k>=0} (-1)^k a(k)
        let r = sum_alternating_accelerated(|k| {
            let mut d = Float::with_val(prec, &inv_alpha * ((k + 1) * (k + 1)));
            d += &c;
            d.recip()
        }, inner_tol, ctx);
        match r {
            Ok(r) => {
                inner_tails += Float::with_val(prec, &r.tail_bound * 2u32);
                inner_terms += r.terms_used;
                let mut s = c.recip();
                s -= Float::with_val(prec, &r.value * 2u32);
                s
            }
            Err(e) => {
                first_error.get_or_insert(e);
                Float::new(prec)
            }
        }
    };

    let s0 = inner(0);
    let outer = sum_alternating(1, |n| signed(n, inner(n)), ctx.tail_tol() / 4.0, ctx);
    if let Some(e) = first_error {
        return Err(e);
    }
    let outer = outer?;
    let pi = ctx.pi();
    let mut value = Float::with_val(prec, &outer.value * 2u32);
    value += &s0;
    value /= &pi;
    let mut tail = Float::with_val(prec, &outer.tail_bound * 2u32);
    // the inner bounds enter once for S(0) and twice for each n >= 1
    tail += Float::with_val(prec, &inner_tails * 2u32);
    tail /= &pi;
    Ok(SeriesResult { value, terms_used: outer.terms_used + inner_terms, tail_bound: tail })
}

/// `8 sum_{n,m>=0} K0(pi beta sqrt((2n+1)^2/alpha + (2m+1)^2 alpha))`.
///
/// Both levels are one-signed and decay geometrically. The declared decay
/// rates are half the asymptotic increments of the Bessel argument, which
/// still dominate `K0(z+d)/K0(z) <= e^(-d)`.
pub fn f_bessel_double_sum(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    let prec = ctx.bits();
    let pb = ctx.float(ctx.pi() * beta);
    let inv_alpha = ctx.float(alpha.recip_ref());
    let sqrt_alpha = ctx.float(alpha.sqrt_ref()).to_f64();
    let rate_m = pb.to_f64() * sqrt_alpha;
    let rate_n = pb.to_f64() / sqrt_alpha;
    let inner_tol = ctx.tail_tol() / 4096.0;

    let mut inner_tails = ctx.float(0);
    let mut inner_terms = 0u64;
    let mut first_error: Option<Error> = None;
    let mut inner = |n: u64| -> Float {
        let odd_n = Float::with_val(prec, (2 * n + 1) * (2 * n + 1)) * &inv_alpha;
        let r = sum_positive_decay(0, |m| {
            let mut z = Float::with_val(prec, alpha * ((2 * m + 1) * (2 * m + 1)));
            z += &odd_n;
            z.sqrt_mut();
            z *= &pb;
            match bessel_k0(&z, ctx) {
                Ok(v) => v,
                Err(Error::Underflow) => Float::new(prec),
                Err(e) => {
                    first_error.get_or_insert(e);
                    Float::new(prec)
                }
            }
        }, rate_m, inner_tol, ctx);
        match r {
            Ok(r) => {
                inner_tails += &r.tail_bound;
                inner_terms += r.terms_used;
                r.value
            }
            Err(e) => {
                first_error.get_or_insert(e);
                Float::new(prec)
            }
        }
    };
    let outer = sum_positive_decay(0, &mut inner, rate_n, ctx.tail_tol() / 16.0, ctx);
    if let Some(e) = first_error {
        return Err(e);
    }
    let outer = outer?;
    let eight = ctx.float(8u32);
    let mut r = outer.scaled(&eight);
    r.tail_bound += Float::with_val(prec, &inner_tails * 8u32);
    r.terms_used += inner_terms;
    Ok(r)
}

/// Log of `prod_{n in Z} [tanh(pi sqrt(alpha^2 n^2 + alpha beta^2)/2)
/// / tanh(pi sqrt(n^2/alpha^2 + beta^2/alpha)/2)]^((-1)^n)`.
///
/// `|ln tanh(x/2)| = 2 artanh(e^-x) <= 2.2 e^-x` once `e^-x <= 1/2`, and
/// both arguments exceed `pi min(alpha, 1/alpha) n`.
fn eq7_log_sum(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    let prec = ctx.bits();
    let pi = ctx.pi();
    let a2 = ctx.float(alpha.square_ref());
    let ia2 = ctx.float(alpha.recip_ref()).square();
    let ab2 = ctx.float(beta.square_ref()) * alpha;
    let b2a = ctx.float(beta.square_ref()) / alpha;
    let term = |n: u64| {
        let nn = n * n;
        let mut u = Float::with_val(prec, &a2 * nn);
        u += &ab2;
        u.sqrt_mut();
        u *= &pi;
        let mut v = Float::with_val(prec, &ia2 * nn);
        v += &b2a;
        v.sqrt_mut();
        v *= &pi;
        signed(n, ln_tanh_half(&u) - ln_tanh_half(&v))
    };
    let t0 = term(0);
    let k = std::f64::consts::PI * slow_scale(alpha);
    // two terms, each under 2.2 e^(-k n)
    let envelope = Envelope::from_small_argument(2.0, k, 2.2);
    let rest = sum_enveloped(1, term, &envelope, ctx.tail_tol() / 2.0, ctx)?;
    Ok(rest.scaled(&ctx.float(2u32)).shifted(&t0))
}

/// The product whose log is `pi (f(alpha, beta) - f(1/alpha, beta sqrt(alpha)))`
/// up to sign; it equals exactly 1.
pub fn unit_product_eq7(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    Ok(exp_of_log_sum(&eq7_log_sum(alpha, beta, ctx)?))
}

pub fn unit_product_eq7_pair(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    let lhs = unit_product_eq7(alpha, beta, ctx)?;
    Ok(IdentityPair::new("eq7", lhs, SeriesResult::exact(ctx.float(1u32))).vacuous_if(is_one(alpha)))
}

/// Log-sums of the two alternating tanh products of [`product_eq8`] and
/// the exact log of the `sqrt(tanh(pi beta/2)/tanh(pi alpha beta/2))` prefactor.
pub fn product_eq8_log_sides(
    alpha: &Float,
    beta: &Float,
    ctx: &PrecisionContext,
) -> Result<(SeriesResult, SeriesResult, Float)> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)?;
    let pi = ctx.pi();
    let b2 = ctx.float(beta.square_ref());
    let log_lhs = alternating_log_tanh(&ctx.float(&pi * alpha), &b2, ctx)?;
    let b2_rhs = ctx.float(&b2 * alpha) * alpha;
    let log_rhs = alternating_log_tanh(&ctx.float(&pi / alpha), &b2_rhs, ctx)?;
    let pb = ctx.float(&pi * beta);
    let mut shift = ln_tanh_half(&pb);
    shift -= ln_tanh_half(&ctx.float(&pb * alpha));
    shift /= 2u32;
    Ok((log_lhs, log_rhs, shift))
}

/// `prod_{n>=1} tanh(pi alpha sqrt(n^2+beta^2)/2)^((-1)^n)` against
/// `sqrt(tanh(pi beta/2)/tanh(pi alpha beta/2))` times
/// `prod_{n>=1} tanh(pi sqrt(n^2/alpha^2+beta^2)/2)^((-1)^n)`.
pub fn product_eq8(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    let (log_lhs, log_rhs, shift) = product_eq8_log_sides(alpha, beta, ctx)?;
    let log_rhs = log_rhs.shifted(&shift);
    Ok(IdentityPair::new("eq8", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    fn close(a: &Float, b: &Float, tol: f64) -> bool {
        Float::with_val(a.prec(), a - b).abs() < tol
    }

    #[test]
    fn partial_fraction_matches_lattice_sum() {
        let ctx = PrecisionContext::default();
        for (a, b) in [(1.0, 0.5), (0.5, 1.0), (2.0, 0.3)] {
            let pf = f_partial_fraction(&f(a), &f(b), &ctx).unwrap();
            let lat = f_lattice_double_sum(&f(a), &f(b), &ctx).unwrap();
            assert!(close(&pf.value, &lat.value, 1e-28), "({a},{b}): {} vs {}", pf.value, lat.value);
        }
    }

    #[test]
    fn bessel_sum_matches_partial_fraction() {
        let ctx = PrecisionContext::default();
        for (a, b) in [(1.0, 0.5), (0.5, 1.0), (2.0, 0.3)] {
            let pf = f_partial_fraction(&f(a), &f(b), &ctx).unwrap();
            let bs = f_bessel_double_sum(&f(a), &f(b), &ctx).unwrap();
            assert!(close(&pf.value, &bs.value, 1e-28), "({a},{b}): {} vs {}", pf.value, bs.value);
        }
    }

    #[test]
    fn bessel_sum_dominated_by_first_term() {
        let ctx = PrecisionContext::default();
        let bs = f_bessel_double_sum(&f(1.0), &f(10.0), &ctx).unwrap();
        let z = Float::with_val(256, rug::float::Constant::Pi) * 10u32 * Float::with_val(256, 2u32).sqrt();
        let first = bessel_k0(&z, &ctx).unwrap() * 8u32;
        let rel = Float::with_val(256, &bs.value / &first) - 1u32;
        assert!(rel.abs() < 0.01);
    }

    #[test]
    fn partial_fraction_reciprocity() {
        // f(alpha, beta) = f(1/alpha, beta) by swapping n and m
        let ctx = PrecisionContext::default();
        let a = f(0.7);
        let b = f(0.4);
        let lhs = f_partial_fraction(&a, &b, &ctx).unwrap();
        let rhs = f_partial_fraction(&Float::with_val(256, a.recip_ref()), &b, &ctx).unwrap();
        assert!(close(&lhs.value, &rhs.value, 1e-30));
    }

    #[test]
    fn eq7_is_one() {
        let ctx = PrecisionContext::default();
        for (a, b) in [(2.0, 0.5), (0.3, 1.0), (5.0, 0.1)] {
            let p = unit_product_eq7_pair(&f(a), &f(b), &ctx).unwrap();
            assert!(p.abs_residual() < 1e-30, "({a},{b}): {}", p.abs_residual());
            assert!(!p.vacuous);
        }
        assert!(unit_product_eq7_pair(&f(1.0), &f(0.5), &ctx).unwrap().vacuous);
    }

    #[test]
    fn eq8_holds_and_reduces_to_eq1_shape() {
        let ctx = PrecisionContext::default();
        for (a, b) in [(2.0, 0.5), (0.3, 1.0), (1.5, 2.0)] {
            let p = product_eq8(&f(a), &f(b), &ctx).unwrap();
            assert!(p.abs_residual() < 1e-30, "({a},{b}): {}", p.abs_residual());
        }
    }

    #[test]
    fn eq8_lhs_matches_direct_product() {
        let ctx = PrecisionContext::default();
        let p = product_eq8(&f(2.0), &f(0.5), &ctx).unwrap();
        let pa = Float::with_val(512, rug::float::Constant::Pi) * 2u32;
        let mut direct = Float::with_val(512, 1u32);
        for n in 1..=200u32 {
            let mut r = Float::with_val(512, n * n) + 0.25f64;
            r.sqrt_mut();
            let t = (Float::with_val(512, &r * &pa) / 2u32).tanh();
            if n % 2 == 1 { direct /= t } else { direct *= t }
        }
        assert!(Float::with_val(512, &direct - &p.lhs.value).abs() < 1e-33);
    }
}
