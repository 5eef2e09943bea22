//! Command-line surface of herm-theta: instance files, sweeps and self-test
//! tables.

pub mod commands;
pub mod instance;
