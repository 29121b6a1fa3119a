//! Library surface of the CLI: configuration and the verification suite,
//! shared between the binary and the acceptance tests.

pub mod config;
pub mod suite;
