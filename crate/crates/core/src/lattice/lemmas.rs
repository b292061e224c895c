//! Finite trigonometric product formulas used to symmetrize the
//! reciprocal relations.

use rug::Float;

use super::{cosh_minus_cos, pi_frac};
use crate::error::{Error, Result};
use crate::numkernel::{PrecisionContext, SeriesResult};
use crate::transforms::IdentityPair;

/// Running log of a product of positive factors.
pub(crate) struct LogProduct {
    sum: Float,
    factors: u64,
}

impl LogProduct {
    pub(crate) fn new(prec: u32) -> Self {
        Self { sum: Float::new(prec), factors: 0 }
    }

    pub(crate) fn times(&mut self, factor: &Float) {
        self.sum += Float::with_val(self.sum.prec(), factor.ln_ref());
        self.factors += 1;
    }

    pub(crate) fn divide(&mut self, factor: &Float) {
        self.sum -= Float::with_val(self.sum.prec(), factor.ln_ref());
        self.factors += 1;
    }

    pub(crate) fn times_pow2(&mut self, k: u64) {
        let ln2 = Float::with_val(self.sum.prec(), rug::float::Constant::Log2);
        self.sum += ln2 * k;
    }

    pub(crate) fn add_log(&mut self, log: &Float) {
        self.sum += log;
        self.factors += 1;
    }

    /// The product rounded to the caller's precision.
    pub(crate) fn finish(&self, ctx: &PrecisionContext) -> SeriesResult {
        let mut r = SeriesResult::exact(ctx.float(self.sum.exp_ref()));
        r.terms_used = self.factors.max(1);
        r
    }
}

/// Working precision for finite products: 32 bits above the caller's.
pub(crate) fn work_bits(ctx: &PrecisionContext) -> u32 {
    ctx.bits() + 32
}

fn exact_value(v: Float, ctx: &PrecisionContext) -> SeriesResult {
    SeriesResult::exact(ctx.float(&v))
}

/// `2^(m-1) prod_{j=1}^m (cosh a - cos(pi (j-1/2)/m)) = cosh(m a)`.
pub fn cos_product_lemma(m: u32, alpha: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let prec = work_bits(ctx);
    let a = Float::with_val(prec, alpha);
    let mut lhs = LogProduct::new(prec);
    lhs.times_pow2(m as u64 - 1);
    for j in 1..=m as u64 {
        lhs.times(&cosh_minus_cos(&a, &pi_frac(2 * j - 1, 2 * m as u64, prec)));
    }
    let rhs = Float::with_val(prec, &a * m).cosh();
    Ok(IdentityPair::new("lemma18", lhs.finish(ctx), exact_value(rhs, ctx)))
}

/// `2^(m-1) prod_{j=1}^{m-1} (cosh a - cos(pi j/m)) = sinh(m a)/sinh(a)`.
pub fn sin_product_lemma(m: u32, alpha: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if m < 2 {
        return Err(Error::Domain(format!("m = {m} must be at least 2")));
    }
    if alpha.is_zero() {
        return Err(Error::Degenerate("alpha = 0: the ratio is the limit value m".into()));
    }
    let prec = work_bits(ctx);
    let a = Float::with_val(prec, alpha);
    let mut lhs = LogProduct::new(prec);
    lhs.times_pow2(m as u64 - 1);
    for j in 1..m as u64 {
        lhs.times(&cosh_minus_cos(&a, &pi_frac(j, m as u64, prec)));
    }
    // ratio of sinh in log space: ln|sinh(m a)| - ln|sinh a|
    let mut rhs = LogProduct::new(prec);
    rhs.times(&Float::with_val(prec, &a * m).sinh().abs());
    rhs.divide(&a.clone().sinh().abs());
    Ok(IdentityPair::new("lemma21", lhs.finish(ctx), rhs.finish(ctx)))
}

/// `prod_{j=1}^n cos(pi (j-1/2)/(2n)) = sqrt(2)/2^n`.
pub fn cos_half_angle_product(n: u32, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let prec = work_bits(ctx);
    let mut lhs = LogProduct::new(prec);
    for j in 1..=n as u64 {
        lhs.times(&pi_frac(2 * j - 1, 4 * n as u64, prec).cos());
    }
    let mut rhs = Float::with_val(prec, 2u32).sqrt();
    rhs >>= n;
    Ok(IdentityPair::new("lemma-half", lhs.finish(ctx), exact_value(rhs, ctx)))
}

/// `2^(m-1) prod_{j=1}^m [cosh a - cos(y + 2 pi j/m)] = cosh(m a) - cos(m y)`.
pub fn shifted_cos_product_lemma(m: u32, alpha: &Float, y: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let prec = work_bits(ctx);
    let a = Float::with_val(prec, alpha);
    let y = Float::with_val(prec, y);
    let mut lhs = LogProduct::new(prec);
    lhs.times_pow2(m as u64 - 1);
    for j in 1..=m as u64 {
        let phi = pi_frac(2 * j, m as u64, prec) + &y;
        lhs.times(&cosh_minus_cos(&a, &phi));
    }
    let rhs = cosh_minus_cos(&Float::with_val(prec, &a * m), &Float::with_val(prec, &y * m));
    Ok(IdentityPair::new("lemma-shift", lhs.finish(ctx), exact_value(rhs, ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    fn rel(p: &IdentityPair) -> f64 {
        p.rel_residual().to_f64()
    }

    #[test]
    fn cos_product_cases() {
        let ctx = PrecisionContext::default();
        let tol = ctx.exact_tol();
        let p = cos_product_lemma(1, &f(0.6), &ctx).unwrap();
        assert_eq!(p.rhs.value, f(0.6).cosh());
        assert!(rel(&p) < tol);
        // 2 (cosh 1 - sqrt2/2)(cosh 1 + sqrt2/2) = 2 cosh^2 1 - 1
        let p = cos_product_lemma(2, &f(1.0), &ctx).unwrap();
        let c = f(1.0).cosh();
        let direct = Float::with_val(256, c.square_ref()) * 2u32 - 1u32;
        assert!(Float::with_val(256, &p.lhs.value - &direct).abs() < 1e-70);
        assert!(rel(&cos_product_lemma(7, &f(0.83), &ctx).unwrap()) < tol);
    }

    #[test]
    fn sin_product_cases() {
        let ctx = PrecisionContext::default();
        let tol = ctx.exact_tol();
        let p = sin_product_lemma(2, &f(1.0), &ctx).unwrap();
        let direct = f(1.0).cosh() * 2u32;
        assert!(Float::with_val(256, &p.lhs.value - &direct).abs() < 1e-70);
        assert!(rel(&p) < tol);
        assert!(rel(&sin_product_lemma(5, &f(0.4), &ctx).unwrap()) < tol);
        assert!(rel(&sin_product_lemma(3, &f(20.0), &ctx).unwrap()) < tol);
        assert!(matches!(sin_product_lemma(3, &f(0.0), &ctx), Err(Error::Degenerate(_))));
        assert!(sin_product_lemma(1, &f(1.0), &ctx).is_err());
    }

    #[test]
    fn half_angle_cases() {
        let ctx = PrecisionContext::default();
        let tol = ctx.exact_tol();
        let half_sqrt2 = Float::with_val(256, 2u32).sqrt() / 2u32;
        let p = cos_half_angle_product(1, &ctx).unwrap();
        assert!(Float::with_val(256, &p.lhs.value - &half_sqrt2).abs() < 1e-70);
        let p = cos_half_angle_product(2, &ctx).unwrap();
        let direct = pi_frac(1, 8, 256).cos() * pi_frac(3, 8, 256).cos();
        assert!(Float::with_val(256, &direct - &p.rhs.value).abs() < 1e-70);
        assert!(rel(&cos_half_angle_product(9, &ctx).unwrap()) < tol);
    }

    #[test]
    fn shifted_cases() {
        let ctx = PrecisionContext::default();
        let tol = ctx.exact_tol();
        // y = 0, m = 2: 2 (cosh a - 1)(cosh a + 1) = cosh 2a - 1
        let a = f(0.9);
        let p = shifted_cos_product_lemma(2, &a, &f(0.0), &ctx).unwrap();
        let direct = Float::with_val(256, &a * 2u32).cosh() - 1u32;
        assert!(Float::with_val(256, &p.rhs.value - &direct).abs() < 1e-70);
        assert!(rel(&p) < tol);
        let p = shifted_cos_product_lemma(1, &a, &f(0.3), &ctx).unwrap();
        let direct = a.clone().cosh() - f(0.3).cos();
        assert!(Float::with_val(256, &p.lhs.value - &direct).abs() < 1e-70);
        assert!(rel(&shifted_cos_product_lemma(6, &f(0.7), &f(1.1), &ctx).unwrap()) < tol);
    }
}
