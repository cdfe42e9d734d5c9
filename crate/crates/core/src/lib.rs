//! Line-bundle cohomology, Chern character invariants and weak Brill-Noether verdicts on
//! rational surfaces: Hirzebruch surfaces, blowups of the plane and del Pezzo surfaces of
//! degree 4 to 7.

pub mod chern;
pub mod cohomology;
pub mod decide;
pub mod error;
pub mod goodsums;
pub mod json;
pub mod lattice;
pub mod resolutions;

pub use error::{Error, Result};
pub use lattice::{DivisorClass, PointConfig, QDivisor, Surface, SurfaceKind};
