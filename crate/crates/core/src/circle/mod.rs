//! Piecewise projective homeomorphisms of the circle `R ∪ {∞}` with exact
//! jets at breakpoints.

pub mod map;
pub mod moebius;

pub use map::{ArcJson, CircleJson, CircleReport, ContinuityFailure, Orientation, PWMoebius, Smoothness, K_MAX};
pub use moebius::{CirclePoint, Moebius};
