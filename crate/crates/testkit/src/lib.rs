//! Test support for lexlevel: slow but obvious reference implementations,
//! hand-annotated dependency fixtures and random input generators.
//!
//! Nothing here depends on lexlevel itself, so the oracles cannot share a bug
//! with the code they check.

pub mod fixtures;
pub mod fuzz;
pub mod oracles;
