//! Command-line front end for the `oneplace` library.

pub mod app;
pub mod parser;
