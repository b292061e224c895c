use rug::float::Constant;
use rug::Float;

use super::PrecisionContext;
use crate::error::{Error, Result};

const SERIES_LIMIT: f64 = 2.0;

/// Modified Bessel function `K0(z)` for real `z > 0`.
///
/// Uses the ascending series for `z <= 2` and the integral
/// `K0(z) = int_0^inf e^(-z cosh t) dt` by the trapezoidal rule above that.
/// Returns [`Error::Underflow`] when `e^(-z)` leaves the exponent range.
pub fn bessel_k0(z: &Float, ctx: &PrecisionContext) -> Result<Float> {
    if z.is_nan() || *z <= 0u32 {
        return Err(Error::Domain(format!("K0 needs z > 0, got {}", z.to_f64())));
    }
    // MPFR's exponent range is about 2^±(2^30); stay well inside it
    if *z > 1.0e8 {
        return Err(Error::Underflow);
    }
    if *z <= SERIES_LIMIT {
        Ok(bessel_k0_series(z, ctx.bits()))
    } else {
        Ok(bessel_k0_integral(z, ctx.bits()))
    }
}

/// Ascending series `K0(z) = -(ln(z/2) + gamma) I0(z) + sum_k (z^2/4)^k H_k / (k!)^2`
/// evaluated at `prec` bits (plus internal guard bits).
pub fn bessel_k0_series(z: &Float, prec: u32) -> Float {
    let work = prec + 32 + (z.to_f64().max(1.0) * 3.0) as u32;
    let q = Float::with_val(work, z * z) / 4u32;
    let mut term = Float::with_val(work, 1u32);
    let mut i0 = Float::with_val(work, 1u32);
    let mut weighted = Float::new(work);
    let mut harmonic = Float::new(work);
    let eps = Float::with_val(work, -(work as i32)).exp2();
    let mut k: u64 = 0;
    loop {
        k += 1;
        term *= &q;
        term /= k * k;
        harmonic += Float::with_val(work, k).recip();
        i0 += &term;
        let contrib = Float::with_val(work, &term * &harmonic);
        weighted += &contrib;
        if contrib < Float::with_val(work, &weighted * &eps) && term < Float::with_val(work, &i0 * &eps) {
            break;
        }
    }
    let mut log_term = Float::with_val(work, z / 2u32).ln();
    log_term += Float::with_val(work, Constant::Euler);
    let r = weighted - log_term * i0;
    Float::with_val(prec, r)
}

/// `K0(z) = e^(-z) int_0^inf exp(-2 z sinh^2(t/2)) dt`, trapezoidal rule
/// with step halving until two levels agree to the working precision.
pub fn bessel_k0_integral(z: &Float, prec: u32) -> Float {
    let work = prec + 16;
    let z = Float::with_val(work, z);
    let two_z = Float::with_val(work, &z * 2u32);
    let g = |t: f64| -> Float {
        let mut s = Float::with_val(work, t / 2.0);
        s.sinh_mut();
        s.square_mut();
        s *= &two_z;
        s = -s;
        s.exp()
    };
    let budget = (work as f64 + 10.0) * std::f64::consts::LN_2;
    let t_max = 2.0 * (budget / (2.0 * z.to_f64())).sqrt().asinh() + 0.25;
    let eps = Float::with_val(work, -(work as i32)).exp2();

    let mut h = 0.5f64;
    let mut raw = Float::with_val(work, 0.5);
    let mut k = 1.0;
    while k * h <= t_max {
        raw += g(k * h);
        k += 1.0;
    }
    let mut estimate = Float::with_val(work, &raw * h);
    for _ in 0..24 {
        h /= 2.0;
        let mut t = h;
        while t <= t_max {
            raw += g(t);
            t += 2.0 * h;
        }
        let next = Float::with_val(work, &raw * h);
        let change = Float::with_val(work, &next - &estimate).abs();
        estimate = next;
        if change <= Float::with_val(work, &estimate * &eps) * 16u32 {
            break;
        }
    }
    let damp = Float::with_val(work, -&z).exp();
    Float::with_val(prec, estimate * damp)
}
