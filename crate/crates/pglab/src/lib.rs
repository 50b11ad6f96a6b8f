//! JSON documents and the `pglab` command line on top of `pglab-core`.

pub mod cli;
pub mod doc;
