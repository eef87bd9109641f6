//! Standard-library companion to `fcgraph-core`: the JSON exchange formats,
//! the dimension table and the verification suites behind the `fcgraph`
//! command.

pub mod dims;
pub mod json;
pub mod suites;

pub use fcgraph_core;
