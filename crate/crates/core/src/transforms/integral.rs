//! Products and sums over a lattice row equated with integrals of the
//! same summand.

use rug::Float;

use super::{check_positive, is_one, slow_scale, IdentityPair};
use crate::error::{Error, Result};
use crate::numkernel::{
    exp_of_log_sum, integrate_semi_infinite, ln1m_exp_neg, ln1p_exp_neg, sum_enveloped, Envelope,
    PrecisionContext, QuadSpec, SeriesResult,
};

/// `c sqrt(x^2 s + b2)`.
fn scaled_norm(c: &Float, x: &Float, s: &Float, b2: &Float) -> Float {
    let mut r = Float::with_val(c.prec(), x.square_ref());
    r *= s;
    r += b2;
    r.sqrt_mut();
    r *= c;
    r
}

fn validate(alpha: &Float, beta: &Float) -> Result<()> {
    check_positive("alpha", alpha)?;
    check_positive("beta", beta)
}

/// Common pieces `pi`, `alpha`, `1/alpha^2`, `beta^2`.
struct Scales {
    pi: Float,
    alpha: Float,
    one: Float,
    inv_a2: Float,
    b2: Float,
    slow: f64,
}

impl Scales {
    fn new(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Self {
        Self {
            pi: ctx.pi(),
            alpha: ctx.float(alpha),
            one: ctx.float(1u32),
            inv_a2: ctx.float(alpha.recip_ref()).square(),
            b2: ctx.float(beta.square_ref()),
            slow: slow_scale(alpha),
        }
    }

    /// `pi alpha sqrt(x^2 + beta^2)` and `pi sqrt(x^2/alpha^2 + beta^2)`.
    fn pair(&self, x: &Float) -> (Float, Float) {
        let pa = Float::with_val(self.pi.prec(), &self.pi * &self.alpha);
        (scaled_norm(&pa, x, &self.one, &self.b2), scaled_norm(&self.pi, x, &self.inv_a2, &self.b2))
    }

    /// `ln(1 + e^(-u)) - ln(1 + e^(-v))`, bounded by `e^(-pi k x)`.
    fn odd_summand(&self, x: &Float) -> Float {
        let (u, v) = self.pair(x);
        ln1p_exp_neg(&u) - ln1p_exp_neg(&v)
    }

    /// `ln(1 - e^(-2u)) - ln(1 - e^(-2v))`.
    fn eta_summand(&self, x: &Float) -> Float {
        let (u, v) = self.pair(x);
        ln1m_exp_neg(&(u * 2u32)) - ln1m_exp_neg(&(v * 2u32))
    }

    /// `int_0^inf g` for a summand under `amp e^(-rate x)` beyond half
    /// the cutoff.
    fn integral<F>(&self, g: F, amp_at: impl Fn(f64) -> f64, rate: f64, beta: &Float, ctx: &PrecisionContext) -> Result<SeriesResult>
    where
        F: FnMut(&Float) -> Float,
    {
        let spec = QuadSpec::for_decay(rate, beta.to_f64(), ctx.tail_tol());
        let envelope = Envelope::new(amp_at(spec.cutoff / 2.0), rate);
        integrate_semi_infinite(g, &spec, &envelope, ctx)
    }
}

/// `prod_{n>=0} (1 + e^(-pi alpha sqrt((2n+1)^2 + beta^2)))
/// / (1 + e^(-pi sqrt((2n+1)^2/alpha^2 + beta^2)))` against
/// `exp(1/2 int_0^inf ln[(1 + e^(-pi alpha sqrt(x^2+beta^2)))
/// / (1 + e^(-pi sqrt(x^2/alpha^2+beta^2)))] dx)`.
pub fn odd_product_integral_eq10(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    validate(alpha, beta)?;
    let prec = ctx.bits();
    let sc = Scales::new(alpha, beta, ctx);
    let k = std::f64::consts::PI * sc.slow;
    let envelope = Envelope::new((-k).exp(), 2.0 * k);
    let log_lhs = sum_enveloped(0, |n| sc.odd_summand(&Float::with_val(prec, 2 * n + 1)), &envelope, ctx.tail_tol(), ctx)?;
    let integral = sc.integral(|x| sc.odd_summand(x), |_| 1.0, k, beta, ctx)?;
    let log_rhs = integral.scaled(&ctx.float(0.5));
    Ok(IdentityPair::new("eq10", exp_of_log_sum(&log_lhs), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}

/// `sum_{n>=1} g(n)` and `int_0^inf g`, `g` the eta-type summand.
fn eta_sum_and_integral(
    sc: &Scales,
    beta: &Float,
    ctx: &PrecisionContext,
) -> Result<(SeriesResult, SeriesResult)> {
    let prec = ctx.bits();
    let rate = 2.0 * std::f64::consts::PI * sc.slow;
    // |ln(1-v)| <= v/(1 - v_max) with v <= e^(-rate x)
    let amp_at = |x: f64| 1.0 / (1.0 - (-rate * x).exp());
    let envelope = Envelope::new(amp_at(1.0), rate).valid_from(1.0);
    let sum = sum_enveloped(1, |n| sc.eta_summand(&Float::with_val(prec, n)), &envelope, ctx.tail_tol(), ctx)?;
    let integral = sc.integral(|x| sc.eta_summand(x), amp_at, rate, beta, ctx)?;
    Ok((sum, integral))
}

/// `prod_{n>=1} (1 - e^(-2 pi alpha sqrt(n^2+beta^2)))
/// / (1 - e^(-2 pi sqrt(n^2/alpha^2+beta^2)))` against
/// `sqrt((1 - e^(-2 pi beta)) / (1 - e^(-2 pi alpha beta)))` times
/// `exp(int_0^inf` of the log of the same ratio`)`.
pub fn dedekind_gen_eq11(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    validate(alpha, beta)?;
    let sc = Scales::new(alpha, beta, ctx);
    let (sum, integral) = eta_sum_and_integral(&sc, beta, ctx)?;
    let tpb = ctx.float(2u32 * ctx.pi()) * beta;
    let mut shift = ln1m_exp_neg(&tpb);
    shift -= ln1m_exp_neg(&ctx.float(&tpb * alpha));
    shift /= 2u32;
    let log_rhs = integral.shifted(&shift);
    Ok(IdentityPair::new("eq11", exp_of_log_sum(&sum), exp_of_log_sum(&log_rhs))
        .vacuous_if(is_one(alpha)))
}

/// `sum_{n in Z} g(n) = int_{-inf}^{inf} g` for the eta-type summand `g`;
/// both sides are reported as sums, not products.
pub fn sum_equals_integral_eq12(alpha: &Float, beta: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    validate(alpha, beta)?;
    let sc = Scales::new(alpha, beta, ctx);
    let (sum, integral) = eta_sum_and_integral(&sc, beta, ctx)?;
    let two = ctx.float(2u32);
    let g0 = sc.eta_summand(&ctx.float(0u32));
    let lhs = sum.scaled(&two).shifted(&g0);
    let rhs = integral.scaled(&two);
    Ok(IdentityPair::new("eq12", lhs, rhs).vacuous_if(is_one(alpha)))
}

/// Even summand of the shifted identity:
/// `ln(1 - e^(-2 pi alpha sqrt(beta^2+(x+theta)^2)))
/// + ln(1 - e^(-2 pi alpha sqrt(beta^2+(x-theta)^2)))
/// - ln(1 - 2 e^(-s) cos(2 pi theta) + e^(-2s))`, `s = 2 pi sqrt(beta^2 + x^2/alpha^2)`.
struct ThetaSummand {
    two_pi_alpha: Float,
    two_pi: Float,
    theta: Float,
    inv_a2: Float,
    b2: Float,
    cos_2pt: Float,
    /// `4 sin^2(pi theta)`, used when `e^(-s)` is close to 1
    four_sin2: Float,
}

impl ThetaSummand {
    fn eval(&self, x: &Float) -> Float {
        let prec = x.prec();
        let shifted = |x: Float| {
            let mut r = x.square();
            r += &self.b2;
            r.sqrt_mut();
            r *= &self.two_pi_alpha;
            ln1m_exp_neg(&r)
        };
        let mut total = shifted(Float::with_val(prec, x + &self.theta));
        total += shifted(Float::with_val(prec, x - &self.theta));
        let s = scaled_norm(&self.two_pi, x, &self.inv_a2, &self.b2);
        let q = Float::with_val(prec, -&s).exp();
        let den_log = if s > 1u32 {
            // ln(1 + (e^(-2s) - 2 e^(-s) cos))
            let mut w = Float::with_val(prec, q.square_ref());
            w -= Float::with_val(prec, &q * &self.cos_2pt) * 2u32;
            w.ln_1p()
        } else {
            // (1 - e^(-s))^2 + 4 e^(-s) sin^2(pi theta), no cancellation
            let mut d = Float::with_val(prec, -&s).exp_m1().square();
            d += Float::with_val(prec, &q * &self.four_sin2);
            d.ln()
        };
        total - den_log
    }
}

/// Shifted sum-equals-integral identity for `0 < theta < 1/2`; the summand
/// is even in `x` so both sides run over `n, x >= 0` and are doubled.
pub fn theta_sum_equals_integral_eq13(
    alpha: &Float,
    beta: &Float,
    theta: &Float,
    ctx: &PrecisionContext,
) -> Result<IdentityPair> {
    validate(alpha, beta)?;
    if !(theta.is_finite() && *theta > 0u32 && *theta < 0.5f64) {
        return Err(Error::Domain(format!("theta must lie in (0, 1/2), got {}", theta.to_f64())));
    }
    let prec = ctx.bits();
    let pi = ctx.pi();
    let two_pi = ctx.float(&pi * 2u32);
    let pt = ctx.float(&pi * theta);
    let g = ThetaSummand {
        two_pi_alpha: ctx.float(&two_pi * alpha),
        two_pi: two_pi.clone(),
        theta: ctx.float(theta),
        inv_a2: ctx.float(alpha.recip_ref()).square(),
        b2: ctx.float(beta.square_ref()),
        cos_2pt: ctx.float(&pt * 2u32).cos(),
        four_sin2: pt.sin().square() * 4u32,
    };

    let a = alpha.to_f64();
    let th = theta.to_f64();
    let pi64 = std::f64::consts::PI;
    let rate = 2.0 * pi64 * slow_scale(alpha);
    // numerators: e^(-2 pi alpha (n - theta)) / (1 - e^(-pi alpha)) each;
    // denominator: 2 e^(-2 pi n/alpha) / (1 - e^(-2 pi/alpha))
    let amp = 2.0 * (2.0 * pi64 * a * th).exp() / (1.0 - (-pi64 * a).exp())
        + 2.0 / (1.0 - (-2.0 * pi64 / a).exp());
    let envelope = Envelope::new(amp, rate).valid_from(1.0);
    let sum = sum_enveloped(1, |n| g.eval(&Float::with_val(prec, n)), &envelope, ctx.tail_tol(), ctx)?;
    let spec = QuadSpec::for_decay(rate, beta.to_f64() + th, ctx.tail_tol());
    let integral = integrate_semi_infinite(|x| g.eval(x), &spec, &envelope, ctx)?;

    let two = ctx.float(2u32);
    let lhs = sum.scaled(&two).shifted(&g.eval(&ctx.float(0u32)));
    let rhs = integral.scaled(&two);
    Ok(IdentityPair::new("eq13", lhs, rhs))
}
