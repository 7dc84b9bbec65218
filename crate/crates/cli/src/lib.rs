//! Scenario runner and random sweeps for `ldt-core`.
//!
//! A scenario is a JSON file naming one command and its inputs:
//!
//! ```json
//! { "command": "measure", "inputs": { "set": [[0, 1], [2, 3.5]] }, "seed": 0 }
//! ```
//!
//! Running it writes a pretty-printed JSON report echoing the inputs next to
//! the results and a pass flag, plus optional CSV traces.

pub mod commands;
pub mod error;
pub mod format;
pub mod generate;
pub mod oracle;
pub mod scenario;
pub mod sweep;

pub use commands::Command;
pub use error::CliError;
pub use scenario::{run_file, Scenario};
pub use sweep::{sweep, SweepReport};
