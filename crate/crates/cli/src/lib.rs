//! Library surface of the command-line front end (kept separate so the
//! scenario machinery is unit-testable).

pub mod config;
pub mod report;
pub mod scenario;
pub mod table;
