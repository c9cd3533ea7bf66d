//! Edge-colored complete graphs without rainbow triangles: data model,
//! monochromatic fan detection, Gallai partitions, extremal constructions
//! and the bound tables they attain.
//!
//! The crate is `no_std`-compatible (requires `alloc`); the default `std`
//! feature only enables `std::error::Error` conveniences downstream.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

extern crate alloc;

mod bitset;
pub mod bounds;
pub mod coloring;
pub mod construct;
pub mod detect;
pub mod error;
pub mod gallai;

pub use coloring::{Color, ColoredCompleteGraph, EdgeList, GraphBuilder};
pub use detect::{Certificate, VerifyReport};
pub use error::Error;
pub use gallai::GallaiPartition;
