//! Command-line front end, file formats and the acceptance suite for `legtors-core`.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod output;
pub mod suite;
