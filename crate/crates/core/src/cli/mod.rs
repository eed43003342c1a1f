//! File-driven front end: workspaces, commands and the reproduction report.

mod bundled;
mod commands;
mod report;
mod workspace;

pub use bundled::*;
pub use commands::*;
pub use report::*;
pub use workspace::*;
