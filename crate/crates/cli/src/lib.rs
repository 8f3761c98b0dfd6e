//! Datum ingestion, pipeline orchestration and JSON report emission for the
//! `reflmono` binary.

pub mod corpus_files;
pub mod report;
pub mod run;
