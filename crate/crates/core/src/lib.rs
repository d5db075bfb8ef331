//! Planar harmonic mappings built by shearing, their Hadamard convolutions,
//! and grid-based certificates of local univalence and directional convexity.

pub mod analysis;
pub mod cli;
pub mod convolve;
pub mod error;
pub mod mappings;
pub mod series;

pub use error::{Error, Result};
pub use mappings::{HarmonicMap, KernelParams};
pub use series::TruncatedSeries;
