//! Scenario runner, grid oracle and data output for the coupled-oscillator
//! quench model. The analytic formulas live in [`cohosc`].

pub mod config;
pub mod crossing;
mod error;
pub mod evolve;
pub mod oracle;
pub mod output;
pub mod presets;
pub mod scenario;
pub mod suite;

pub use error::{Error, Result};
