//! Both sides of the infinite product and series transformations.
//!
//! Each evaluator returns an [`IdentityPair`] (or a single
//! [`SeriesResult`] for one-sided representations) whose truncation bounds
//! can be added to decide agreement. Products are always summed in log
//! space. Truncation points come from the slowest exponential decay rate
//! among the factors, which is one of `pi alpha`, `pi / alpha` or
//! `pi cos(theta) min(alpha, 1/alpha)` up to constant multiples.

mod integral;
mod lattice_sum;
mod modular;
mod oblique;

pub use integral::{
    dedekind_gen_eq11, odd_product_integral_eq10, sum_equals_integral_eq12,
    theta_sum_equals_integral_eq13,
};
pub use lattice_sum::{
    f_bessel_double_sum, f_lattice_double_sum, f_partial_fraction, product_eq8, product_eq8_log_sides,
    unit_product_eq7,
    unit_product_eq7_pair,
};
pub use modular::{
    dedekind_eta_eq4, legendre5_product, product_eq1, series_transform_eq2,
    series_transform_eq2_parts,
};
pub use oblique::{
    asymmetric_product_sec9, half_integer_product_sec8, half_integer_unit_check,
    oblique_product_sec7, sec9_integral_constant,
};

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{PrecisionContext, SeriesResult};

/// Both sides of one identity, evaluated under the same context.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityPair {
    pub identity_id: &'static str,
    pub lhs: SeriesResult,
    pub rhs: SeriesResult,
    /// Both sides are identical by construction (a fixed point of the
    /// transformation) or every factor is 1 to working precision.
    pub vacuous: bool,
}

impl IdentityPair {
    pub fn new(identity_id: &'static str, lhs: SeriesResult, rhs: SeriesResult) -> Self {
        Self { identity_id, lhs, rhs, vacuous: false }
    }

    pub fn vacuous_if(mut self, vacuous: bool) -> Self {
        self.vacuous |= vacuous;
        self
    }

    pub fn combined_bound(&self) -> Float {
        Float::with_val(self.lhs.value.prec(), &self.lhs.tail_bound + &self.rhs.tail_bound)
    }

    pub fn abs_residual(&self) -> Float {
        Float::with_val(self.lhs.value.prec(), &self.lhs.value - &self.rhs.value).abs()
    }

    /// `|lhs - rhs| / |rhs|`, or the absolute residual when `rhs = 0`.
    pub fn rel_residual(&self) -> Float {
        let abs = self.abs_residual();
        if self.rhs.value.is_zero() {
            abs
        } else {
            abs / Float::with_val(self.lhs.value.prec(), self.rhs.value.abs_ref())
        }
    }

    /// `|lhs - rhs| <= tol + combined bound`.
    pub fn agrees_within(&self, tol: f64) -> bool {
        self.abs_residual() <= self.combined_bound() + tol
    }
}

/// Identity parameters as printed; each evaluator validates what it uses.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Params {
    pub alpha: Option<Float>,
    pub beta: Option<Float>,
    pub theta: Option<Float>,
    pub y: Option<Float>,
    pub a: Option<Float>,
    pub x: Option<Float>,
    pub n_check: Option<u32>,
}

impl Params {
    fn get<'a>(slot: &'a Option<Float>, name: &str) -> Result<&'a Float> {
        slot.as_ref().ok_or_else(|| Error::Domain(format!("missing parameter {name}")))
    }

    pub fn alpha(&self) -> Result<&Float> {
        let v = Self::get(&self.alpha, "alpha")?;
        check_positive("alpha", v)?;
        Ok(v)
    }

    /// `beta > 0`, as required by every beta-dependent evaluator.
    pub fn beta(&self) -> Result<&Float> {
        let v = Self::get(&self.beta, "beta")?;
        check_positive("beta", v)?;
        Ok(v)
    }

    /// `beta >= 0`, allowed where factors stay finite at `beta = 0`.
    pub fn beta_or_zero(&self) -> Result<&Float> {
        let v = Self::get(&self.beta, "beta")?;
        check_non_negative("beta", v)?;
        Ok(v)
    }

    pub fn theta(&self) -> Result<&Float> {
        let v = Self::get(&self.theta, "theta")?;
        check_angle(v)?;
        Ok(v)
    }

    pub fn y(&self) -> Result<&Float> {
        let v = Self::get(&self.y, "y")?;
        check_positive("y", v)?;
        Ok(v)
    }

    pub fn a(&self) -> Result<&Float> {
        let v = Self::get(&self.a, "a")?;
        check_positive("a", v)?;
        Ok(v)
    }

    pub fn x(&self) -> Result<&Float> {
        Self::get(&self.x, "x")
    }

    pub fn n_check(&self) -> Result<u32> {
        match self.n_check {
            Some(n) if n >= 1 => Ok(n),
            Some(n) => Err(Error::Domain(format!("N = {n} must be a positive integer"))),
            None => Err(Error::Domain("missing parameter N".into())),
        }
    }
}

pub(crate) fn check_positive(name: &str, v: &Float) -> Result<()> {
    if v.is_finite() && *v > 0u32 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be positive, got {}", v.to_f64())))
    }
}

pub(crate) fn check_non_negative(name: &str, v: &Float) -> Result<()> {
    if v.is_finite() && *v >= 0u32 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be non-negative, got {}", v.to_f64())))
    }
}

/// `0 <= theta < pi/2`, so that `cos(theta) > 0`.
pub(crate) fn check_angle(theta: &Float) -> Result<()> {
    let half_pi = Float::with_val(theta.prec(), rug::float::Constant::Pi) / 2u32;
    if theta.is_finite() && *theta >= 0u32 && *theta < half_pi {
        Ok(())
    } else {
        Err(Error::Domain(format!("theta must lie in [0, pi/2), got {}", theta.to_f64())))
    }
}

/// Both log-sums vanish to working precision: every factor is 1.
pub(crate) fn unit_logs(log_lhs: &Float, log_rhs: &Float, ctx: &PrecisionContext) -> bool {
    let eps = 16.0 * ctx.epsilon();
    log_lhs.clone().abs() <= eps && log_rhs.clone().abs() <= eps
}

pub(crate) fn is_one(v: &Float) -> bool {
    *v == 1u32
}

/// `(-1)^n v`.
pub(crate) fn signed(n: u64, v: Float) -> Float {
    if n % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `min(alpha, 1/alpha)` as f64, the slower of the two decay scales.
pub(crate) fn slow_scale(alpha: &Float) -> f64 {
    let a = alpha.to_f64();
    a.min(1.0 / a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        let ctx = PrecisionContext::default();
        let mut p = Params::default();
        assert!(p.alpha().is_err());
        p.alpha = Some(ctx.float(-1));
        assert!(matches!(p.alpha(), Err(Error::Domain(_))));
        p.beta = Some(ctx.float(0));
        assert!(p.beta().is_err());
        assert!(p.beta_or_zero().is_ok());
        p.theta = Some(ctx.pi() / 2u32);
        assert!(p.theta().is_err());
        p.theta = Some(ctx.float(0));
        assert!(p.theta().is_ok());
        p.n_check = Some(0);
        assert!(p.n_check().is_err());
    }
}
