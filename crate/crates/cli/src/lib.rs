//! Front-end plumbing for the `odprof` binary: CSV loading with type
//! inference, the plain-text dependency grammar, and the JSON report
//! shapes. Everything semantic lives in `odprof-core`; this crate only
//! moves data between files, strings, and those semantics.

pub mod loader;
pub mod parse;
pub mod report;
