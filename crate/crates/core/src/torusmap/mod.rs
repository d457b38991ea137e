//! Single toral automorphisms: fixed sets, smallness, dynamical type and
//! finite-orbit permutations.

pub mod affine;
pub mod certificate;
pub mod classify;
pub mod fixed;
pub mod perm;

pub use affine::{ElementJson, ToralAffine};
pub use certificate::{group_certificate, CertificateReport};
pub use classify::{classify, DynClass};
pub use fixed::{fixed_set, FixedSetReport};
pub use perm::Permutation;
