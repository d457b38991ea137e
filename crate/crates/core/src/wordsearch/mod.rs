//! Word-ball exploration: enumeration, growth and relation discovery.

pub mod ball;
pub mod report;
pub mod word;

pub use ball::{enumerate_ball, evaluate, Ball, BallOptions, GroupElement, Relation};
pub use report::{ball, ball_with, growth, relations, BallReport, Representative};
pub use word::{Letter, Word};
