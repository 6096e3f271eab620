//! Batch verification of Roter metrics: config parsing, orchestration of the
//! exact curvature and rank pipelines, and JSON reports.

pub mod config;
pub mod report;
pub mod run;
