//! IO, command line and worker pool around `moulde-core`.

pub mod cli;
pub mod exec;
pub mod format;
pub mod paranoid;
