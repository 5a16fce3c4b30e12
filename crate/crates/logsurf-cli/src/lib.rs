//! Front end for the `logsurf` engine: the graph document format, reports,
//! DOT output and the command-line surface.

pub mod commands;
pub mod document;
pub mod dot;
pub mod report;
