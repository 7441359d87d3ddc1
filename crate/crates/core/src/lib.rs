//! Geometry of coadjoint orbits and wave-front cones for small real
//! reductive Lie algebras.

pub mod cone;
pub mod error;
pub mod orbits;
pub mod lie;
pub mod induction;
pub mod tempered;
pub mod catalog;
pub mod cli;
mod linalg;

pub use error::{Error, Result};
