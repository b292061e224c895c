//! Finite EVEN-family lattices with `x = 2 + pi^2 beta^2/(8 n^2)` and
//! `m = alpha n`, compared piece by piece with their infinite limits.

use rug::Float;

use super::lemmas::work_bits;
use super::{reciprocity_14, solve_spectrum, Family, LatticeSpec};
use crate::error::{Error, Result};
use crate::numkernel::{arccosh_excess, exp_of_log_sum, ln_tanh_half, PrecisionContext};
use crate::transforms::product_eq8_log_sides;

/// A positive rational `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u32,
    pub den: u32,
}

impl Ratio {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if num == 0 || den == 0 {
            return Err(Error::Domain(format!("ratio {num}/{den} must be positive")));
        }
        Ok(Self { num, den })
    }

    pub fn to_float(self, prec: u32) -> Float {
        Float::with_val(prec, self.num) / self.den
    }

    /// `self * n` when it is an integer.
    pub fn times(self, n: u32) -> Option<u32> {
        let p = self.num as u64 * n as u64;
        p.is_multiple_of(self.den as u64).then(|| (p / self.den as u64) as u32)
    }
}

/// One row of the convergence table. Errors are absolute distances to the
/// infinite-limit targets.
#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumRow {
    pub n: u32,
    pub m: u32,
    pub x: Float,
    /// `prod_j tanh(m alpha_j)^((-1)^j)`
    pub tanh_alpha: Float,
    pub tanh_alpha_err: Float,
    /// `prod_k tanh(n beta_k)^((-1)^k)`
    pub tanh_beta: Float,
    pub tanh_beta_err: Float,
    /// Ratio of the sinh products through the `tanh(n arccosh(x -+ 1))` closed form.
    pub sinh_ratio: Float,
    pub sinh_ratio_err: Float,
    /// Direct ratio `prod_j sinh(alpha_j)^((-1)^j) / prod_k sinh(beta_k)^((-1)^k)`.
    pub sinh_ratio_direct: Float,
    /// Closed form against the direct ratio of sinh products.
    pub sinh_ratio_closed_form_residual: Float,
    /// Relative residual of the finite reciprocal relation.
    pub reciprocity_residual: Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ContinuumTable {
    pub alpha: Ratio,
    pub beta: Float,
    pub tanh_alpha_target: Float,
    pub tanh_beta_target: Float,
    pub sinh_ratio_target: Float,
    pub rows: Vec<ContinuumRow>,
}

/// `prod_{j} tanh(s alpha_j)^((-1)^j)` in log space.
fn alternating_tanh_log(values: &[Float], s: u32) -> Float {
    let prec = values.first().map_or(64, |v| v.prec());
    let mut sum = Float::new(prec);
    for (i, a) in values.iter().enumerate() {
        let v = ln_tanh_half(&Float::with_val(prec, a * (2 * s)));
        if (i + 1) % 2 == 1 {
            sum -= v;
        } else {
            sum += v;
        }
    }
    sum
}

/// `prod_j sinh(alpha_j)^((-1)^j)` in log space.
fn alternating_sinh_log(values: &[Float]) -> Float {
    let prec = values.first().map_or(64, |v| v.prec());
    let mut sum = Float::new(prec);
    for (i, a) in values.iter().enumerate() {
        let v = Float::with_val(prec, a.sinh_ref()).ln();
        if (i + 1) % 2 == 1 {
            sum -= v;
        } else {
            sum += v;
        }
    }
    sum
}

/// `ln tanh(s arccosh(x - 1)) + ln tanh(s arccosh(x + 1))`.
fn closed_form_log(x: &Float, s: u32) -> Float {
    let prec = x.prec();
    let low = arccosh_excess(&Float::with_val(prec, x - 2u32));
    let high = arccosh_excess(x);
    ln_tanh_half(&(low * (2 * s))) + ln_tanh_half(&(high * (2 * s)))
}

fn abs_diff(a: &Float, b: &Float) -> Float {
    Float::with_val(a.prec(), a - b).abs()
}

/// Convergence table for the finite reciprocal relation as `n` grows.
pub fn continuum_limit_experiment(
    alpha: Ratio,
    beta: &Float,
    n_list: &[u32],
    ctx: &PrecisionContext,
) -> Result<ContinuumTable> {
    if !(beta.is_finite() && *beta > 0u32) {
        return Err(Error::Domain(format!("beta must be positive, got {}", beta.to_f64())));
    }
    let alpha_f = alpha.to_float(ctx.bits());
    let (log_t1, log_t2, shift) = product_eq8_log_sides(&alpha_f, beta, ctx)?;
    let tanh_alpha_target = exp_of_log_sum(&log_t1).value;
    let tanh_beta_target = exp_of_log_sum(&log_t2).value;
    let sinh_ratio_target = ctx.float(shift.exp_ref());

    let work = ctx.at_bits(work_bits(ctx));
    let prec = work.bits();
    let pi2_b2 = work.float(work.pi().square_ref()) * Float::with_val(prec, beta.square_ref());
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let m = alpha
            .times(n)
            .filter(|&m| m > 0)
            .ok_or_else(|| Error::Domain(format!("m = {}/{} * {n} is not an integer", alpha.num, alpha.den)))?;
        let mut x = Float::with_val(prec, &pi2_b2 / (8 * n as u64 * n as u64));
        x += 2u32;
        let sol = solve_spectrum(&LatticeSpec::new(n, m, x.clone(), Family::Even)?, &work)?;

        let tanh_alpha = ctx.float(alternating_tanh_log(&sol.alphas, m).exp());
        let tanh_beta = ctx.float(alternating_tanh_log(&sol.betas, n).exp());
        let mut log_ratio = closed_form_log(&x, n);
        log_ratio -= closed_form_log(&x, m);
        log_ratio /= 2u32;
        let direct = Float::with_val(prec, alternating_sinh_log(&sol.alphas) - alternating_sinh_log(&sol.betas));
        let closed_residual = ctx.float(abs_diff(&log_ratio, &direct).exp_m1());
        let sinh_ratio = ctx.float(log_ratio.exp());
        let rec = reciprocity_14(n, m, &ctx.float(&x), ctx)?;

        rows.push(ContinuumRow {
            n,
            m,
            x: ctx.float(&x),
            tanh_alpha_err: abs_diff(&tanh_alpha, &tanh_alpha_target),
            tanh_alpha,
            tanh_beta_err: abs_diff(&tanh_beta, &tanh_beta_target),
            tanh_beta,
            sinh_ratio_err: abs_diff(&sinh_ratio, &sinh_ratio_target),
            sinh_ratio,
            sinh_ratio_direct: ctx.float(direct.exp_ref()),
            sinh_ratio_closed_form_residual: closed_residual,
            reciprocity_residual: rec.rel_residual(),
        });
    }
    Ok(ContinuumTable { alpha, beta: ctx.float(beta), tanh_alpha_target, tanh_beta_target, sinh_ratio_target, rows })
}
