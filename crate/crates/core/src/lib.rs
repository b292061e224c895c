//! High-precision evaluation of infinite product/series transformations and
//! their finite lattice counterparts.
//!
//! Every identity is evaluated on both sides with an explicit truncation
//! bound, so a caller can decide whether the two sides agree to a declared
//! tolerance.
//!
//! * [`numkernel`]: multiprecision scalar functions, series engines with tail
//!   bounds, and semi-infinite quadrature.
//! * [`transforms`]: evaluators for the infinite identities (theta/eta type
//!   products, lattice sums, Bessel representations, oblique products).
//! * [`lattice`]: the finite coupled-equation reciprocities, the product
//!   lemmas behind them, and the continuum-limit experiment.

pub mod error;
pub mod lattice;
pub mod numkernel;
pub mod transforms;

pub use error::{Error, Result};
pub use numkernel::{PrecisionContext, SeriesResult};
pub use rug::Float;
