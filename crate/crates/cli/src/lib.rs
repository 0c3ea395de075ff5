//! Tooling around the join engine: line-delimited dataset I/O, the
//! brute-force reference join, a seeded synthetic generator, and the
//! measurement harness behind the stats reports.

pub mod dataset;
pub mod experiment;
pub mod gen;
pub mod oracle;
pub mod report;
