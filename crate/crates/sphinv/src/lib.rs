//! Std companion to [`sphinv_core`]: a shared extrema cache, a parallel
//! recognizer and the `sphinv` command line.

pub mod cache;
pub mod cli;
pub mod format;
pub mod parallel;

pub use sphinv_core as core;
