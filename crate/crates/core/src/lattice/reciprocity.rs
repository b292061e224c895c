//! Reciprocal relations between the two spectra of a coupled lattice.
//!
//! Both sides are produced by the same function with the roles of
//! `(alphas, n, m)` and `(betas, m, n)` exchanged.

use rug::Float;

use super::lemmas::{work_bits, LogProduct};
use super::{pi_frac, solve_spectrum, Family, LatticeSpec};
use crate::error::{Error, Result};
use crate::numkernel::{ln1p_exp_neg, ln_tanh_half, PrecisionContext};
use crate::transforms::IdentityPair;

type SideLog = fn(values: &[Float], own: u32, other: u32, prec: u32) -> LogProduct;

fn reciprocity(
    id: &'static str,
    family: Family,
    n: u32,
    m: u32,
    x: &Float,
    side: SideLog,
    ctx: &PrecisionContext,
) -> Result<IdentityPair> {
    let work = ctx.at_bits(work_bits(ctx));
    let spec = LatticeSpec::new(n, m, work.float(x), family)?;
    let sol = solve_spectrum(&spec, &work)?;
    let prec = work.bits();
    let lhs = side(&sol.alphas, n, m, prec).finish(ctx);
    let rhs = side(&sol.betas, m, n, prec).finish(ctx);
    Ok(IdentityPair::new(id, lhs, rhs).vacuous_if(n == m))
}

/// `ln(2 cosh t) = t + ln(1 + e^(-2t))` for `t >= 0`.
fn ln_two_cosh(t: &Float) -> Float {
    let two_t = Float::with_val(t.prec(), t * 2u32);
    ln1p_exp_neg(&two_t) + t
}

/// `ln sinh t` for `t > 0`.
fn ln_sinh(t: &Float) -> Float {
    Float::with_val(t.prec(), t.sinh_ref()).ln()
}

fn side_10(values: &[Float], _own: u32, other: u32, prec: u32) -> LogProduct {
    let mut p = LogProduct::new(prec);
    for a in values {
        p.add_log(&ln_two_cosh(&Float::with_val(prec, a * other)));
    }
    p
}

fn side_11(values: &[Float], _own: u32, other: u32, prec: u32) -> LogProduct {
    let mut p = LogProduct::new(prec);
    for a in values {
        p.add_log(&ln_sinh(&Float::with_val(prec, a * (other + 1))));
        p.add_log(&-ln_sinh(a));
    }
    p
}

fn side_12(values: &[Float], _own: u32, other: u32, prec: u32) -> LogProduct {
    let mut p = LogProduct::new(prec);
    let ln2 = Float::with_val(prec, rug::float::Constant::Log2);
    for a in values {
        p.add_log(&(ln_two_cosh(&Float::with_val(prec, a * other)) - &ln2));
    }
    p
}

fn side_13(values: &[Float], own: u32, other: u32, prec: u32) -> LogProduct {
    let mut p = LogProduct::new(prec);
    for (i, a) in values.iter().enumerate() {
        let j = i as u64 + 1;
        // cosh t + cos s = 2 sinh^2(t/2) + 2 cos^2(s/2), s/2 = other pi (2j-1)/(4 own)
        let mut sh = Float::with_val(prec, a * other) / 2u32;
        sh.sinh_mut();
        sh.square_mut();
        let mut c = pi_frac(other as u64 * (2 * j - 1), 4 * own as u64, prec).cos();
        c.square_mut();
        sh += c;
        sh *= 2u32;
        p.times(&sh);
    }
    p
}

fn side_14(values: &[Float], _own: u32, other: u32, prec: u32) -> LogProduct {
    let mut p = LogProduct::new(prec);
    for (i, a) in values.iter().enumerate() {
        let mut v = ln_tanh_half(&Float::with_val(prec, a * (2 * other)));
        v -= ln_sinh(a);
        if (i + 1) % 2 == 1 {
            v = -v;
        }
        p.add_log(&v);
    }
    p
}

/// `prod 2 cosh(m alpha_j) = prod 2 cosh(n beta_k)` on the half-integer lattice.
pub fn reciprocity_10(n: u32, m: u32, x: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    reciprocity("rec10", Family::Half, n, m, x, side_10, ctx)
}

/// `prod sinh((m+1) alpha_j)/sinh(alpha_j) = prod sinh((n+1) beta_k)/sinh(beta_k)`.
pub fn reciprocity_11(n: u32, m: u32, x: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if *x == 2u32 {
        return Err(Error::Degenerate("x = 2 puts the interior spectrum at its minimum".into()));
    }
    reciprocity("rec11", Family::Interior, n, m, x, side_11, ctx)
}

/// `prod cosh(m alpha_j) = prod cosh(n beta_k)` for the multiplicative coupling.
pub fn reciprocity_12(n: u32, m: u32, x: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    reciprocity("rec12", Family::Mult, n, m, x, side_12, ctx)
}

/// `prod (cosh(m alpha_j) + cos(m pi (2j-1)/(2n)))` and its mirror.
pub fn reciprocity_13(n: u32, m: u32, x: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    reciprocity("rec13", Family::Dispersion, n, m, x, side_13, ctx)
}

/// `prod_{j=1}^{2n-1} (tanh(m alpha_j)/sinh(alpha_j))^((-1)^j)` and its mirror.
pub fn reciprocity_14(n: u32, m: u32, x: &Float, ctx: &PrecisionContext) -> Result<IdentityPair> {
    if !(*x > 2u32) {
        return Err(Error::Domain(format!("x = {} must exceed 2", x.to_f64())));
    }
    reciprocity("rec14", Family::Even, n, m, x, side_14, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 320;

    fn f(v: f64) -> Float {
        Float::with_val(256, v)
    }

    fn rel_diff(a: &Float, b: &Float) -> f64 {
        (Float::with_val(P, a - b) / b).abs().to_f64()
    }

    fn cosf(num: u64, den: u64) -> Float {
        pi_frac(num, den, P).cos()
    }

    /// `2^{mn} prod_j prod_k (x - cos A_j - cos B_k)` with the given angle maps.
    fn symmetric_double(n: u32, m: u32, x: &Float, a: impl Fn(u64, u64) -> Float, b: impl Fn(u64, u64) -> Float) -> Float {
        let mut p = Float::with_val(P, 1u32);
        for j in 1..=n as u64 {
            for k in 1..=m as u64 {
                p *= Float::with_val(P, x - a(j, n as u64)) - b(k, m as u64);
            }
        }
        p << (n * m)
    }

    #[test]
    fn rec10_triple_oracle() {
        let ctx = PrecisionContext::default();
        for (n, m, x) in [(1, 2, 3.0), (4, 7, 2.5)] {
            let p = reciprocity_10(n, m, &f(x), &ctx).unwrap();
            let half = |j: u64, n: u64| cosf(2 * j - 1, 2 * n);
            let oracle = symmetric_double(n, m, &f(x), half, half);
            assert!(rel_diff(&p.lhs.value, &oracle) < ctx.exact_tol());
            assert!(rel_diff(&p.rhs.value, &oracle) < ctx.exact_tol());
            assert!(!p.vacuous);
        }
        let p = reciprocity_10(1, 2, &f(3.0), &ctx).unwrap();
        let direct = Float::with_val(P, f(3.0).acosh() * 2u32).cosh() * 2u32;
        assert!(rel_diff(&p.lhs.value, &direct) < ctx.exact_tol());
    }

    #[test]
    fn rec11_symmetric_oracle() {
        let ctx = PrecisionContext::default();
        for (n, m, x) in [(2, 3, 3.0), (5, 8, 2.2)] {
            let p = reciprocity_11(n, m, &f(x), &ctx).unwrap();
            let interior = |j: u64, n: u64| cosf(j, n + 1);
            let oracle = symmetric_double(n, m, &f(x), interior, interior);
            assert!(rel_diff(&p.lhs.value, &oracle) < ctx.exact_tol(), "({n},{m},{x})");
            assert!(rel_diff(&p.rhs.value, &oracle) < ctx.exact_tol());
        }
        assert!(matches!(reciprocity_11(2, 3, &f(2.0), &ctx), Err(Error::Degenerate(_))));
        assert!(reciprocity_11(2, 3, &f(1.5), &ctx).is_err());
    }

    #[test]
    fn rec12_direct() {
        let ctx = PrecisionContext::default();
        for (n, m, x) in [(1, 2, 2.0), (3, 5, 1.5)] {
            let p = reciprocity_12(n, m, &f(x), &ctx).unwrap();
            // direct: cosh(m * 2 acosh(x / cos phi)) at 320 bits
            let mut direct = Float::with_val(P, 1u32);
            for j in 1..=n as u64 {
                let u = Float::with_val(P, f(x)) / cosf(2 * j - 1, 4 * n as u64);
                direct *= Float::with_val(P, u.acosh() * (2 * m)).cosh();
            }
            assert!(rel_diff(&p.lhs.value, &direct) < ctx.exact_tol(), "({n},{m},{x})");
            assert!(p.rel_residual() < ctx.exact_tol());
        }
        assert!(reciprocity_12(2, 3, &f(0.5), &ctx).is_err());
    }

    #[test]
    fn rec13_symmetric_double_product() {
        let ctx = PrecisionContext::default();
        for (n, m, x) in [(2u32, 3u32, 2.5), (4, 6, 4.0)] {
            let p = reciprocity_13(n, m, &f(x), &ctx).unwrap();
            let xx = Float::with_val(P, f(x));
            let mut oracle = Float::with_val(P, 1u32);
            for j in 1..=n as u64 {
                let a = pi_frac(2 * j - 1, 4 * n as u64, P);
                for k in 1..=m as u64 {
                    let b = pi_frac(2 * k - 1, 4 * m as u64, P);
                    let cc = Float::with_val(P, a.cos_ref()) * Float::with_val(P, b.cos_ref()) * Float::with_val(P, &a + &b).cos() * 2u32;
                    let ss = Float::with_val(P, a.sin_ref()) * Float::with_val(P, b.sin_ref()) * Float::with_val(P, &a - &b).cos() * 2u32;
                    oracle *= Float::with_val(P, &xx - &cc) * Float::with_val(P, &xx - &ss);
                }
            }
            // 2^(n(2m-1)) from the shifted lemma, (2^n/sqrt2)^2 per k from the factorizations
            oracle <<= n * (2 * m - 1) + (2 * n - 1) * m;
            assert!(rel_diff(&p.lhs.value, &oracle) < ctx.exact_tol(), "({n},{m},{x}): {} vs {}", p.lhs.value, oracle);
            assert!(p.rel_residual() < ctx.exact_tol());
        }
    }

    #[test]
    fn rec14_symmetric_form() {
        let ctx = PrecisionContext::default();
        let pi2 = Float::with_val(256, rug::float::Constant::Pi).square();
        let scaled = Float::with_val(256, &pi2 / 72u32) + 2u32;
        for (n, m, x) in [(2u32, 3u32, f(2.3)), (3, 5, scaled)] {
            let p = reciprocity_14(n, m, &x, &ctx).unwrap();
            let xx = Float::with_val(P, &x);
            let last = |own: u64, other: u64| {
                let a = Float::with_val(P, &xx - cosf(2 * own - 1, 2 * own)).acosh();
                Float::with_val(P, a.sinh_ref()) / Float::with_val(P, &a * other).tanh()
            };
            let mut oracle = Float::with_val(P, &xx + cosf(1, 2 * n as u64)) + cosf(1, 2 * m as u64);
            oracle.recip_mut();
            oracle *= last(n as u64, m as u64);
            oracle *= last(m as u64, n as u64);
            for j in 1..n as u64 {
                let a1 = cosf(2 * j - 1, 2 * n as u64);
                let a2 = cosf(j, n as u64);
                for k in 1..m as u64 {
                    let b1 = cosf(2 * k - 1, 2 * m as u64);
                    let b2 = cosf(k, m as u64);
                    let t = |a: &Float, b: &Float| Float::with_val(P, &xx - a) - b;
                    oracle *= t(&a1, &b1) / t(&a2, &b1);
                    oracle *= t(&a2, &b2) / t(&a1, &b2);
                }
            }
            assert!(rel_diff(&p.lhs.value, &oracle) < ctx.exact_tol(), "({n},{m}): {} vs {}", p.lhs.value, oracle);
            assert!(p.rel_residual() < ctx.exact_tol());
        }
        assert!(reciprocity_14(2, 3, &f(2.0), &ctx).is_err());
    }

    #[test]
    fn equal_sizes_are_vacuous_and_exact() {
        let ctx = PrecisionContext::default();
        for p in [
            reciprocity_10(3, 3, &f(2.4), &ctx).unwrap(),
            reciprocity_11(3, 3, &f(2.4), &ctx).unwrap(),
            reciprocity_12(3, 3, &f(2.4), &ctx).unwrap(),
            reciprocity_13(3, 3, &f(2.4), &ctx).unwrap(),
            reciprocity_14(3, 3, &f(2.4), &ctx).unwrap(),
        ] {
            assert!(p.vacuous);
            assert_eq!(p.lhs.value, p.rhs.value);
        }
    }

    #[test]
    fn swapping_sizes_swaps_sides() {
        let ctx = PrecisionContext::default();
        let x = f(2.7);
        type Rec = fn(u32, u32, &Float, &PrecisionContext) -> Result<IdentityPair>;
        let recs: [Rec; 5] = [reciprocity_10, reciprocity_11, reciprocity_12, reciprocity_13, reciprocity_14];
        for rec in recs {
            let a = rec(3, 5, &x, &ctx).unwrap();
            let b = rec(5, 3, &x, &ctx).unwrap();
            assert_eq!(a.lhs.value, b.rhs.value);
            assert_eq!(a.rhs.value, b.lhs.value);
        }
    }
}
