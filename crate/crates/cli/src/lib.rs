//! Library backing the `subsetmax` binary: instance files, benchmark
//! generators, batch runs with CSV/JSON reports, and guarantee
//! verification suites.

pub mod generate;
pub mod instance;
pub mod results;
pub mod runner;
pub mod verify;

pub use instance::{read_instance, write_instance, FunctionSpec, Instance, Metadata};
