//! Numeric substrate: precision handling, elementary helpers, `K0`, series
//! engines with tail bounds, products in log space, and semi-infinite
//! quadrature.
//!
//! Everything here is a pure function of its inputs and an immutable
//! [`PrecisionContext`].

mod bessel;
mod elementary;
mod precision;
mod product;
mod quadrature;
mod series;

pub use bessel::{bessel_k0, bessel_k0_integral, bessel_k0_series};
pub use elementary::{
    arccosh_excess, arccosh_stable, legendre_symbol_5, ln1m_exp_neg, ln1p_exp_neg, ln_tanh_half,
};
pub use precision::PrecisionContext;
pub use product::{exp_of_log_sum, product_from_log_terms, Summation};
pub use quadrature::{integrate_semi_infinite, QuadSpec};
pub use series::{
    sum_alternating, sum_alternating_accelerated, sum_enveloped, sum_positive_decay, Envelope,
    SeriesResult,
};
