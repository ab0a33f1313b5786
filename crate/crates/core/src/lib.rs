//! Closure spaces on small ground sets and their implicational bases.
//!
//! A [`ClosureSpace`] is given by its full family of closed sets. From it the
//! crate derives the closure lattice, generator families, the binary,
//! canonical, canonical-direct, D- and E-bases, validity reports for the
//! E-base, and the lifting construction that embeds a closure lattice into
//! one whose E-base is valid.

pub mod analysis;
pub mod bases;
pub mod census;
pub mod error;
pub mod fixtures;
pub mod generators;
pub mod io;
pub mod lifting;
pub mod matroid;
pub mod set;
pub mod space;
pub mod validity;

pub use error::{Error, Result};
pub use set::{Element, ElementSet, GroundSet};
pub use space::ClosureSpace;
