//! Exact finite group theory, character tables and simplicial homology for
//! deciding which finite groups act on spheres without embedding in `O(d+1)`.

// index loops follow the matrix notation
#![allow(clippy::needless_range_loop)]

pub mod character;
pub mod error;
pub mod group;
pub mod linalg;
pub mod simplicial;
pub mod verify;

pub use error::{Error, Result};
