//! Sampling, brute-force oracles, property suites and the command line for
//! [`raag_core`].

pub mod brute;
pub mod checks;
pub mod cli;
pub mod fixtures;
pub mod report;
pub mod sample;
