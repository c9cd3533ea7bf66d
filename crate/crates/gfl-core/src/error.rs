//! Error type shared across the crate.

use alloc::string::String;
use core::fmt;

use crate::detect::Certificate;

/// All failure modes of the library surface.
///
/// Operations return the narrow subset that applies to them; the enum is
/// shared so callers can bubble errors through composite pipelines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A color id of 0 or above the declared palette size.
    Palette { color: u8, palette: u8 },
    /// An edge endpoint repeated: edges join two distinct vertices.
    SelfLoop { v: usize },
    /// A vertex index at or above the graph order.
    Index { v: usize, n: usize },
    /// Malformed `.gcg` text (magic line, header, or token syntax).
    Format(String),
    /// `.gcg` body with the wrong number of edge entries.
    Length { expected: usize, got: usize },
    /// A parameter outside an operation's documented domain.
    Param(String),
    /// The brute-force oracle only accepts small graphs.
    OracleSize { n: usize, max: usize },
    /// Partition search requires rainbow-triangle-free input; the offending
    /// triangle is returned as a certificate.
    RainbowPresent(Certificate),
    /// A partition value that is not a partition of the vertex set, or that
    /// violates the structural invariants it claims.
    PartitionShape(String),
    /// An internal invariant failed; indicates a bug, never user input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Palette { color, palette } => {
                write!(f, "color {color} outside palette 1..={palette}")
            }
            Error::SelfLoop { v } => write!(f, "self-loop at vertex {v}"),
            Error::Index { v, n } => write!(f, "vertex {v} out of range for order {n}"),
            Error::Format(msg) => write!(f, "format error: {msg}"),
            Error::Length { expected, got } => {
                write!(f, "expected {expected} edge entries, got {got}")
            }
            Error::Param(msg) => write!(f, "invalid parameter: {msg}"),
            Error::OracleSize { n, max } => {
                write!(f, "oracle limited to {max} vertices, got {n}")
            }
            Error::RainbowPresent(_) => write!(f, "input contains a rainbow triangle"),
            Error::PartitionShape(msg) => write!(f, "malformed partition: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violated: {msg}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
