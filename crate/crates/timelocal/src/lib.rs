//! File formats, configuration and command implementations for the
//! `timelocal` binary. The numerics live in `timelocal-core`.

// `!(x > 0.0)` style checks are used on purpose so NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
mod error;
pub mod format;

pub use config::{OutputFormat, Overrides, RunConfig, ScenarioKind};
pub use error::{Error, Result};
