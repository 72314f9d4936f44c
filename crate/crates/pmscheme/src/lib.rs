//! File formats, threaded table construction and the `pmscheme` command line.

pub mod cli;
pub mod format;
pub mod parallel;
