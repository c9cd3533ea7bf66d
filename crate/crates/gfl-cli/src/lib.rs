//! Command-line companion to `gfl-core`: file I/O, JSON reports, and
//! the exhaustive searches that re-verify the finite claims.
//!
//! The library side exists so the search engine ([`search`]), the
//! claim checkers ([`claims`]), and the command implementations
//! ([`commands`]) can be driven directly from tests; the `gfl` binary
//! is a thin argument-parsing layer over [`commands`].

pub mod claims;
pub mod commands;
pub mod report;
pub mod search;
