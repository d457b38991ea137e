//! Piecewise-integer-linear homeomorphisms of the torus.

pub mod compose;
pub mod germ;
pub mod inner;
pub mod map;
pub mod tgamma;
pub mod validate;

pub use compose::{compose, image_tiles, inverse, simplify, ImageTile};
pub use germ::{germ_at, AngularSector, Germ, Sector};
pub use inner::{inner_certificate, InnerCertificate};
pub use map::{MapJson, Mode, PWMap, Piece, PieceJson};
pub use tgamma::{t_gamma, Slice, TGammaSlice};
pub use validate::{validate, Invariant, ValidationReport, Violation};

use crate::error::Result;
use crate::ratgeom::IntMatrix;
use crate::torusmap::Permutation;
use crate::wordsearch::ball::GroupElement;

/// Cheap invariants that agree on equal maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapFingerprint {
    pub homology: IntMatrix,
    pub perm2: Option<Permutation>,
    pub perm3: Option<Permutation>,
}

impl GroupElement for PWMap {
    type Fingerprint = MapFingerprint;

    fn identity_like(&self) -> Self {
        PWMap::identity(self.dim())
    }

    fn product(&self, other: &Self) -> Result<Self> {
        compose(self, other)
    }

    fn inverse(&self) -> Result<Self> {
        inverse(self)
    }

    fn fingerprint(&self) -> Result<MapFingerprint> {
        let perm = |q| if self.preserves_grid(q) { self.torsion_perm(q).map(Some) } else { Ok(None) };
        Ok(MapFingerprint { homology: self.homology()?, perm2: perm(2)?, perm3: perm(3)? })
    }

    fn same_element(&self, other: &Self) -> Result<bool> {
        self.equals(other)
    }

    fn size(&self) -> usize {
        self.piece_count()
    }
}
