//! Rank-3 line matroids: construction, orientability certification, and
//! embeddings into finite projective planes.

pub mod cli;
pub mod embed;
pub mod error;
pub mod families;
pub mod gf;
pub mod matroid;
pub mod orientability;
pub mod projplane;

pub use error::{Error, Result};
