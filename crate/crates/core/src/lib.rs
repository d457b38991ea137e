//! Exact computations in the group of piecewise-integer-linear
//! homeomorphisms of the n-torus, with supporting tools for toral
//! automorphisms, word-ball exploration and piecewise-Möbius circle maps.

pub mod circle;
pub mod error;
pub mod ratgeom;

pub use error::{Error, Result};
pub mod pwgl;
pub mod torusmap;
pub mod wordsearch;
