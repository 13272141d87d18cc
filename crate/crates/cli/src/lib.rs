//! File format, workspace and DOT export behind the `deltalens` binary.

pub mod dot;
pub mod error;
pub mod format;
pub mod workspace;

pub use dot::export_dot;
pub use error::CliError;
pub use workspace::{FunctorEntry, LensEntry, Workspace};
