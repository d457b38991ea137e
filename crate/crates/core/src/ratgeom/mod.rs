//! Exact rational linear algebra and the polytope kernel.

pub mod matrix;
pub mod poly;
pub mod polytope;
pub mod rat;
pub mod snf;

pub use matrix::{IntMatrix, QMatrix, QVector};
pub use poly::{charpoly, unit_circle_roots, IntPoly};
pub use polytope::{intersect, Halfspace, Polytope};
pub use rat::{big, int, parse_rat, rat, Rat};
pub use snf::{snf, Snf};
