//! Oritatami folding on the triangular lattice, L-system curve embeddings,
//! and pigeonhole certificates for curves no cyclic system can draw.
//!
//! Lattice geometry is generic over the coordinate integer; the rest of the
//! crate works on the 32-bit aliases below.

pub mod certify;
pub mod embed;
pub mod engine;
pub mod error;
pub mod format;
pub mod horizon;
pub mod lattice;
pub mod lsystem;
pub mod render;
pub mod system;

pub use lattice::{Coord, LatticePoint};

/// Lattice point with 32-bit coordinates.
pub type Point = lattice::LatticePoint<i32>;
/// Lattice point with 64-bit coordinates.
pub type Point64 = lattice::LatticePoint<i64>;
/// Isometry on 32-bit points.
pub type Transform = lattice::Isometry<i32>;
/// Hexagonal region on 32-bit points.
pub type Hexagon = lattice::HexRegion<i32>;
