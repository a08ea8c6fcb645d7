//! Command-line toolkit around the dimer model checks.

pub mod commands;
pub mod format;
pub mod report;
pub mod svg;
