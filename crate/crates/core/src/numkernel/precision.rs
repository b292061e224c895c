use rug::float::Constant;
use rug::{Assign, Float};

use crate::error::{Error, Result};

/// Working precision and acceptance tolerance shared by every evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionContext {
    bits: u32,
    target_tol: f64,
    guard_bits: u32,
    max_terms: u64,
}

impl PrecisionContext {
    pub const DEFAULT_BITS: u32 = 256;
    pub const DEFAULT_TOL: f64 = 1e-25;
    pub const DEFAULT_GUARD_BITS: u32 = 32;
    pub const DEFAULT_MAX_TERMS: u64 = 200_000;

    pub fn new(bits: u32, target_tol: f64, guard_bits: u32) -> Result<Self> {
        if bits < 64 {
            return Err(Error::Context(format!("bits = {bits} is below the minimum of 64")));
        }
        if !(target_tol > 0.0) || !target_tol.is_finite() {
            return Err(Error::Context(format!("target_tol = {target_tol} must be positive")));
        }
        if guard_bits >= bits {
            return Err(Error::Context(format!(
                "guard_bits = {guard_bits} must be below bits = {bits}"
            )));
        }
        let floor = 2f64.powi(-(bits as i32) + guard_bits as i32);
        if target_tol < floor {
            return Err(Error::Context(format!(
                "target_tol = {target_tol:e} is below 2^(-{bits}+{guard_bits}) = {floor:e}"
            )));
        }
        Ok(Self { bits, target_tol, guard_bits, max_terms: Self::DEFAULT_MAX_TERMS })
    }

    /// 64-bit smoke-test mode.
    pub fn fast() -> Self {
        Self::new(64, 1e-11, 16).expect("fast context is valid")
    }

    /// Default context at `bits` with the tolerance and guard bits unchanged.
    pub fn with_bits(bits: u32) -> Result<Self> {
        Self::new(bits, Self::DEFAULT_TOL, Self::DEFAULT_GUARD_BITS)
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        self.max_terms = max_terms.max(1);
        self
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn guard_bits(&self) -> u32 {
        self.guard_bits
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    /// Tolerance handed to truncated series and integrals: the target
    /// tolerance shrunk by the guard bits.
    pub fn tail_tol(&self) -> f64 {
        self.target_tol * 2f64.powi(-(self.guard_bits as i32))
    }

    /// Unit roundoff `2^-bits`.
    pub fn epsilon(&self) -> f64 {
        2f64.powi(-(self.bits as i32))
    }

    /// Relative tolerance for finite identities, where only rounding error
    /// separates the two sides: `2^(-bits+16)`.
    pub fn exact_tol(&self) -> f64 {
        2f64.powi(-(self.bits as i32) + 16)
    }

    pub fn float<T>(&self, value: T) -> Float
    where
        Float: Assign<T>,
    {
        Float::with_val(self.bits, value)
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.bits, Constant::Pi)
    }

    /// The same context at a different precision, keeping tolerances. Used
    /// for doubled-precision reference computations.
    pub fn at_bits(&self, bits: u32) -> Self {
        Self { bits, ..self.clone() }
    }

    /// Stable key for per-context caches.
    pub fn cache_key(&self) -> (u32, u64, u32, u64) {
        (self.bits, self.target_tol.to_bits(), self.guard_bits, self.max_terms)
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BITS, Self::DEFAULT_TOL, Self::DEFAULT_GUARD_BITS)
            .expect("default context is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_and_fast_contexts_are_valid() {
        let ctx = PrecisionContext::default();
        assert_eq!(ctx.bits(), 256);
        assert_eq!(ctx.target_tol(), 1e-25);
        assert!(ctx.tail_tol() < 1e-34);
        let fast = PrecisionContext::fast();
        assert_eq!(fast.bits(), 64);
    }

    #[test]
    fn rejects_low_precision_and_unreachable_tolerance() {
        assert!(PrecisionContext::new(53, 1e-11, 0).is_err());
        assert!(PrecisionContext::new(128, 0.0, 8).is_err());
        // 2^-96 ~ 1.3e-29 is the floor for (128, 32)
        assert!(PrecisionContext::new(128, 1e-30, 32).is_err());
        assert!(PrecisionContext::new(128, 1e-25, 32).is_ok());
    }
}
