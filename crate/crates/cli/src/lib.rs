//! Library half of the `kyflat` command: verify suites, scans, report rendering and Matrix Market IO.

pub mod mtx;
pub mod record;
pub mod report;
pub mod scan;
pub mod verify;
