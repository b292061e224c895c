//! Registry, runner and report emission for the identity verification
//! harness.

mod emit;
mod error;
mod params;
mod registry;
mod report;
mod run;

pub use emit::{emit_report, parse_json, to_csv, to_json, Destination, Format};
pub use error::{HarnessError, HarnessResult};
pub use params::{parse_assignment, parse_integer, parse_ratio, parse_real, ParamKind, ParamValue, ParsedParams};
pub use registry::{descriptor, list_identities, Evaluation, IdentityDescriptor, ParamSpec, Tolerance};
pub use report::{IdentityReport, Verdict};
pub use run::{context_for, run_identity, suite, sweep, RunConfig, DEFAULT_SWEEP_CAP};
