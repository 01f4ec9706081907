//! Graph DSL, DOT export, reports and the command-line front end over
//! `paradox-core`.

pub mod cli;
pub mod dot;
pub mod dsl;
pub mod report;
