//! Finite coupled-equation lattices, their reciprocal product relations
//! and the continuum limit that recovers the infinite products.
//!
//! Given the common value `x` the coupled equations are explicit in each
//! `alpha_j`, so spectra come from one stable arccosh per index. Every
//! inversion is written as `arccosh(1 + delta)` with `delta` formed
//! without cancellation, which keeps small `alpha_j` near `x = 2` accurate.

mod continuum;
mod lemmas;
mod reciprocity;

pub use continuum::{continuum_limit_experiment, ContinuumRow, ContinuumTable, Ratio};
pub use lemmas::{
    cos_half_angle_product, cos_product_lemma, shifted_cos_product_lemma, sin_product_lemma,
};
pub use reciprocity::{
    reciprocity_10, reciprocity_11, reciprocity_12, reciprocity_13, reciprocity_14,
};

use rug::Float;

use crate::error::{Error, Result};
use crate::numkernel::{arccosh_excess, PrecisionContext};

/// Which coupled equations tie `alpha_j` to `beta_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `cosh a_j + cos(pi (j-1/2)/n) = x`
    Half,
    /// `cosh a_j + cos(pi j/(n+1)) = x`
    Interior,
    /// `cosh(a_j/2) cos(pi (j-1/2)/(2n)) = x`
    Mult,
    /// `cosh(a_j/2) = x/c_j - c_j`, `c_j = cos(pi (2j-1)/(4n))`
    Dispersion,
    /// `cosh a_j + cos(pi j/(2n)) = x`, `j = 1..2n-1`
    Even,
}

impl Family {
    /// Smallest feasible common value.
    pub fn x_min(self) -> u32 {
        match self {
            Family::Mult => 1,
            _ => 2,
        }
    }

    /// Number of unknowns for a side of size `n`.
    pub fn count(self, n: u32) -> u32 {
        match self {
            Family::Even => 2 * n - 1,
            _ => n,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub n: u32,
    pub m: u32,
    pub x: Float,
    pub family: Family,
}

impl LatticeSpec {
    pub fn new(n: u32, m: u32, x: Float, family: Family) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!("lattice sizes must be positive, got n = {n}, m = {m}")));
        }
        if !x.is_finite() || x < family.x_min() {
            return Err(Error::Infeasible(format!(
                "x = {} below {} for {family:?}",
                x.to_f64(),
                family.x_min()
            )));
        }
        Ok(Self { n, m, x, family })
    }

    /// The same lattice with the roles of `n` and `m` exchanged.
    pub fn swapped(&self) -> Self {
        Self { n: self.m, m: self.n, x: self.x.clone(), family: self.family }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSolution {
    pub alphas: Vec<Float>,
    pub betas: Vec<Float>,
    pub spec: LatticeSpec,
}

impl SpectrumSolution {
    /// Largest relative error of the defining equations after substituting
    /// the spectra back.
    pub fn back_substitution_residual(&self) -> Float {
        let prec = self.spec.x.prec();
        let mut worst = Float::new(prec);
        for (values, size) in [(&self.alphas, self.spec.n), (&self.betas, self.spec.m)] {
            for (i, a) in values.iter().enumerate() {
                let j = i as u32 + 1;
                let implied = implied_x(self.spec.family, size, j, a);
                let mut r = implied - &self.spec.x;
                r /= &self.spec.x;
                r.abs_mut();
                if r > worst {
                    worst = r;
                }
            }
        }
        worst
    }
}

/// `pi * num / den` at `prec`.
pub(crate) fn pi_frac(num: u64, den: u64, prec: u32) -> Float {
    let mut a = Float::with_val(prec, rug::float::Constant::Pi);
    a *= num;
    a /= den;
    a
}

/// `1 - cos(phi) = 2 sin^2(phi/2)`.
pub(crate) fn versine(phi: &Float) -> Float {
    let mut s = Float::with_val(phi.prec(), phi / 2u32);
    s.sin_mut();
    s.square_mut();
    s * 2u32
}

/// `cosh(a) - cos(phi) = 2 sinh^2(a/2) + 2 sin^2(phi/2)`.
pub(crate) fn cosh_minus_cos(a: &Float, phi: &Float) -> Float {
    let mut s = Float::with_val(a.prec(), a / 2u32);
    s.sinh_mut();
    s.square_mut();
    s *= 2u32;
    s + versine(phi)
}

/// The angle attached to index `j` of a side of size `n`.
fn family_angle(family: Family, n: u32, j: u32, prec: u32) -> Float {
    let (n, j) = (n as u64, j as u64);
    match family {
        Family::Half => pi_frac(2 * j - 1, 2 * n, prec),
        Family::Interior => pi_frac(j, n + 1, prec),
        Family::Mult | Family::Dispersion => pi_frac(2 * j - 1, 4 * n, prec),
        Family::Even => pi_frac(j, 2 * n, prec),
    }
}

/// `x` reproduced from one spectral value.
fn implied_x(family: Family, n: u32, j: u32, a: &Float) -> Float {
    let prec = a.prec();
    let phi = family_angle(family, n, j, prec);
    match family {
        Family::Half | Family::Interior | Family::Even => a.clone().cosh() + phi.cos(),
        Family::Mult => (Float::with_val(prec, a / 2u32).cosh()) * phi.cos(),
        Family::Dispersion => {
            // cosh(a/2) = x/c - c
            let c = phi.cos();
            let mut h = Float::with_val(prec, a / 2u32).cosh();
            h += &c;
            h * c
        }
    }
}

/// `cosh(alpha_j)` or `cosh(alpha_j/2)` minus one, free of cancellation.
fn excess(family: Family, x: &Float, phi: &Float) -> Float {
    let prec = x.prec();
    match family {
        Family::Half | Family::Interior | Family::Even => {
            Float::with_val(prec, x - 2u32) + versine(phi)
        }
        Family::Mult => {
            // x/cos(phi) - 1 = ((x - 1) + (1 - cos phi)) / cos phi
            let mut d = Float::with_val(prec, x - 1u32) + versine(phi);
            d /= phi.clone().cos();
            d
        }
        Family::Dispersion => {
            // x/c - c - 1 = ((x - 2) + (1 - c) + (1 - c^2)) / c
            let c = phi.clone().cos();
            let mut d = Float::with_val(prec, x - 2u32) + versine(phi);
            d += phi.clone().sin().square();
            d /= c;
            d
        }
    }
}

fn side_spectrum(family: Family, n: u32, x: &Float) -> Vec<Float> {
    let prec = x.prec();
    (1..=family.count(n))
        .map(|j| {
            let phi = family_angle(family, n, j, prec);
            let a = arccosh_excess(&excess(family, x, &phi));
            match family {
                Family::Mult | Family::Dispersion => a * 2u32,
                _ => a,
            }
        })
        .collect()
}

/// Closed-form spectra of both sides at the precision of `ctx`.
pub fn solve_spectrum(spec: &LatticeSpec, ctx: &PrecisionContext) -> Result<SpectrumSolution> {
    let spec = LatticeSpec::new(spec.n, spec.m, ctx.float(&spec.x), spec.family)?;
    let alphas = side_spectrum(spec.family, spec.n, &spec.x);
    let betas = side_spectrum(spec.family, spec.m, &spec.x);
    Ok(SpectrumSolution { alphas, betas, spec })
}
