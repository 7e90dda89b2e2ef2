//! Text format, command-line commands and the property self-test runner
//! for `gpd-core`.

pub mod catalog;
pub mod commands;
pub mod format;
pub mod suites;
