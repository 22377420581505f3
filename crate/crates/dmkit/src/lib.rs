//! File formats, a parallel census runner and the `dmkit` command-line tool.

pub mod census_runner;
pub mod cli;
pub mod format;
pub mod svg;
