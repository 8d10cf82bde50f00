//! Verification runners for the bundled example corpus.

pub mod common;
pub mod ex72;
