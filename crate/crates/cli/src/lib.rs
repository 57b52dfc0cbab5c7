//! Command-line toolchain for reactive grid motion planning: compile problems
//! to SyGuS specifications, solve them with the built-in synthesizer, validate
//! controllers, query the brute-force game oracle, and render traces.

pub mod bench;
pub mod commands;
pub mod format;
pub mod render;

pub use commands::{run, Cli};
pub use format::{parse_problem, serialize_problem};
