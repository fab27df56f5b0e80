//! Command-line front end: configuration, the small input grammars, JSON
//! export with deterministic key order and `p/q` rationals, the branched
//! cover genus calculator, and the citation-keyed verification suites.

pub mod config;
pub mod export;
pub mod expr;
pub mod rh;
pub mod verify;

/// Process exit codes shared by the binary and the suites.
pub mod exit_codes {
    pub const PASS: i32 = 0;
    pub const VERIFICATION_FAILURE: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const RESOURCE_GUARD: i32 = 3;
}
