//! Workspace files, task execution and report rendering for the `gseq`
//! command line tool.

pub mod dsl;
pub mod report;
pub mod tasks;
pub mod workspace;

pub use dsl::{parse_workspace, print_workspace, ParseError};
pub use report::{render_json, render_text, Report};
pub use tasks::{run_tasks, RunError, RunOptions};
pub use workspace::{build_workspace, Diagnostic, TaskKind, Workspace};
