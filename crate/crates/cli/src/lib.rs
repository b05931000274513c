//! Input parsing and structured output for the `latsum` command-line tool,
//! split out as a library so integration tests can reuse the formats.

pub mod input;
pub mod output;
