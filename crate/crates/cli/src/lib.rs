//! Batch front end: JobSpec in, deterministic JSON or CSV out.

pub mod job;
pub mod run;
pub mod verify;

pub use job::{JobSpec, SCHEMA};
pub use run::{run, Failure, Outcome, Settings};
