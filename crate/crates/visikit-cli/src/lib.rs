//! Shared pieces of the `visikit` command line tool: the JSONL report
//! schema and the fixed benchmark corpus. The binary's argument handling and
//! command dispatch live in `main.rs`; this library exists so integration
//! tests can rebuild exactly what the binary reports on.

pub mod corpus;
pub mod report;
