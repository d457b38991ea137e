//! Piecewise toral-affine maps: data model, evaluation and the cheap
//! homomorphic invariants (homology, finite-orbit permutations).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratgeom::polytope::{bboxes_disjoint, intersect};
use crate::ratgeom::rat::{fmt_rat, fmt_vec, frac_vec, parse_rat, parse_vec};
use crate::ratgeom::{big, Halfspace, IntMatrix, Polytope, QMatrix, QVector, Rat};
use crate::torusmap::perm::{grid_point, grid_size, index_of_point};
use crate::torusmap::{Permutation, ToralAffine};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// All translations vanish mod 1: elements agree piecewise with GL_n(Z).
    Linear,
    /// Rational translations allowed.
    Affine,
}

/// A convex region of `[0,1]^n` carrying one toral affine map.
#[derive(Clone, Debug)]
pub struct Piece {
    pub region: Polytope,
    pub map: ToralAffine,
}

impl Piece {
    pub fn new(region: Polytope, map: ToralAffine) -> Self {
        Self { region, map }
    }
}

#[derive(Clone)]
pub struct PWMap {
    n: usize,
    mode: Mode,
    pieces: Vec<Piece>,
}

impl fmt::Debug for PWMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PWMap(n={}, {:?}, {} pieces)", self.n, self.mode, self.pieces.len())?;
        for p in &self.pieces {
            writeln!(f, "  {:?} -> {}", p.region, p.map)?;
        }
        Ok(())
    }
}

impl PWMap {
    /// Structural checks only: dimensions, regions inside the unit cube,
    /// unimodular matrices (enforced by `ToralAffine`) and the mode.
    /// Pieces of zero volume are dropped; regions are canonicalized.
    pub fn new(n: usize, mode: Mode, pieces: Vec<Piece>) -> Result<Self> {
        let cube = Polytope::unit_cube(n);
        let mut kept = Vec::with_capacity(pieces.len());
        for (i, p) in pieces.into_iter().enumerate() {
            if p.region.ambient_dim() != n || p.map.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: p.map.dim() });
            }
            if mode == Mode::Linear && !p.map.is_linear() {
                return Err(Error::Malformed(format!("piece {i}: nonzero translation in linear mode")));
            }
            let region = p.region.canonical()?;
            if region.is_empty()? {
                continue;
            }
            if region.vertices()?.iter().any(|v| !cube.contains(v)) {
                return Err(Error::Malformed(format!("piece {i} is not contained in the unit cube")));
            }
            if !region.is_full_dim()? {
                continue;
            }
            kept.push(Piece { region, map: p.map });
        }
        if kept.is_empty() {
            return Err(Error::Malformed("map has no full-dimensional pieces".into()));
        }
        Ok(Self { n, mode, pieces: kept })
    }

    pub(crate) fn from_parts_unchecked(n: usize, mode: Mode, pieces: Vec<Piece>) -> Self {
        Self { n, mode, pieces }
    }

    pub fn identity(n: usize) -> Self {
        Self::global(ToralAffine::identity(n))
    }

    /// The map that is `g` everywhere.
    pub fn global(g: ToralAffine) -> Self {
        let n = g.dim();
        let mode = if g.is_linear() { Mode::Linear } else { Mode::Affine };
        Self { n, mode, pieces: vec![Piece::new(Polytope::unit_cube(n).canonical().expect("cube"), g)] }
    }

    /// Identity on `0 <= x1 <= 1/2`, `(x, y) ↦ (x, y + 2x)` on `1/2 <= x1 <= 1`.
    pub fn adams() -> Self {
        let half = crate::ratgeom::rat(1, 2);
        let left = Polytope::from_box(&[Rat::zero(), Rat::zero()], &[half.clone(), Rat::one()]);
        let right = Polytope::from_box(&[half, Rat::zero()], &[Rat::one(), Rat::one()]);
        let shear = ToralAffine::from_rows(&[[1, 0], [2, 1]]).expect("unimodular");
        Self::new(
            2,
            Mode::Linear,
            vec![Piece::new(left, ToralAffine::identity(2)), Piece::new(right, shear)],
        )
        .expect("well-formed fixture")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.iter().all(|p| p.map.is_identity())
    }

    /// Index of the first piece containing `x`.
    pub fn locate(&self, x: &[Rat]) -> Option<usize> {
        self.pieces.iter().position(|p| p.region.contains(x))
    }

    /// `f(x)` for `x` taken mod 1; on shared boundaries the lowest-index
    /// piece is used.
    pub fn apply(&self, x: &[Rat]) -> Result<QVector> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        let x = frac_vec(x);
        let i = self
            .locate(&x)
            .ok_or_else(|| Error::InvalidOperand("point not covered by any piece".into()))?;
        Ok(self.pieces[i].map.apply(&x))
    }

    pub fn total_volume(&self) -> Result<Rat> {
        self.pieces.iter().try_fold(Rat::zero(), |acc, p| Ok(acc + p.region.volume()?))
    }

    /// `Σ A_i vol(X_i)`: the induced action on first homology.
    pub fn homology(&self) -> Result<IntMatrix> {
        let mut acc = QMatrix::zeros(self.n, self.n);
        for p in &self.pieces {
            acc = acc.add(&p.map.matrix().to_q().scale(&p.region.volume()?));
        }
        let m = acc
            .to_int()
            .ok_or_else(|| Error::Integrity("homology matrix has non-integer entries".into()))?;
        if !m.is_unimodular() {
            return Err(Error::Integrity(format!("homology matrix {m} is not unimodular")));
        }
        Ok(m)
    }

    /// Exact Lipschitz constant for the sup metric on the lift.
    pub fn lipschitz_bound(&self) -> Rat {
        self.pieces
            .iter()
            .map(|p| big(&p.map.matrix().inf_norm()))
            .max()
            .unwrap_or_else(Rat::zero)
    }

    pub fn preserves_grid(&self, q: u64) -> bool {
        self.pieces.iter().all(|p| p.map.preserves_grid(q))
    }

    /// Permutation of the q-torsion points.
    pub fn torsion_perm(&self, q: u64) -> Result<Permutation> {
        if q == 0 {
            return Err(Error::Malformed("q must be positive".into()));
        }
        if !self.preserves_grid(q) {
            return Err(Error::GridNotPreserved { q: q as u32 });
        }
        let images = (0..grid_size(q, self.n))
            .map(|i| index_of_point(&self.apply(&grid_point(i, q, self.n))?, q))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    /// Equality as maps of the torus: the two maps agree wherever a piece of
    /// one overlaps a piece of the other in positive volume.
    pub fn equals(&self, other: &PWMap) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        for p in &self.pieces {
            let pb = p.region.bbox()?.expect("nonempty piece");
            for q in &other.pieces {
                if p.map == q.map {
                    continue;
                }
                let qb = q.region.bbox()?.expect("nonempty piece");
                if bboxes_disjoint(&pb, &qb) {
                    continue;
                }
                if intersect(&p.region, &q.region)?.is_full_dim()? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            n: self.n,
            mode: self.mode,
            pieces: self
                .pieces
                .iter()
                .map(|p| PieceJson {
                    halfspaces: p
                        .region
                        .halfspaces()
                        .iter()
                        .map(|h| {
                            let mut row = fmt_vec(&h.a);
                            row.push(fmt_rat(&h.b));
                            row
                        })
                        .collect(),
                    matrix: p.map.matrix().to_strings(),
                    translation: Some(fmt_vec(p.map.translation())),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &MapJson) -> Result<Self> {
        let mut pieces = Vec::with_capacity(j.pieces.len());
        for (i, pj) in j.pieces.iter().enumerate() {
            let ctx = |e: Error| Error::Malformed(format!("piece {i}: {e}"));
            let mut hs = Vec::with_capacity(pj.halfspaces.len());
            for row in &pj.halfspaces {
                if row.len() != j.n + 1 {
                    return Err(ctx(Error::DimensionMismatch { expected: j.n + 1, found: row.len() }));
                }
                let a = parse_vec(&row[..j.n]).map_err(ctx)?;
                let b = parse_rat(&row[j.n]).map_err(ctx)?;
                hs.push(Halfspace::new(a, b));
            }
            let region = Polytope::new(j.n, hs).map_err(ctx)?;
            let a = IntMatrix::from_strings(&pj.matrix).map_err(ctx)?;
            let b = match &pj.translation {
                Some(t) => parse_vec(t).map_err(ctx)?,
                None => vec![Rat::zero(); j.n],
            };
            let map = ToralAffine::new(a, b).map_err(ctx)?;
            pieces.push(Piece::new(region, map));
        }
        Self::new(j.n, j.mode, pieces)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: MapJson = serde_json::from_str(s)?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }
}

/// `{"n", "mode", "pieces": [{"halfspaces": [[a..., b]], "matrix", "translation"}]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct MapJson {
    pub n: usize,
    pub mode: Mode,
    pub pieces: Vec<PieceJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PieceJson {
    pub halfspaces: Vec<Vec<String>>,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{int, rat};

    #[test]
    fn adams_apply() {
        let f = PWMap::adams();
        assert_eq!(f.apply(&[rat(3, 4), int(0)]).unwrap(), vec![rat(3, 4), rat(1, 2)]);
        assert_eq!(f.apply(&[rat(1, 2), int(0)]).unwrap(), vec![rat(1, 2), int(0)]);
        // the other piece gives the same value on the shared line
        assert_eq!(f.pieces()[1].map.apply(&[rat(1, 2), int(0)]), vec![rat(1, 2), int(0)]);
        let x = vec![rat(1, 3), rat(5, 7)];
        assert_eq!(PWMap::identity(2).apply(&x).unwrap(), x);
    }

    #[test]
    fn homology_examples() {
        assert_eq!(PWMap::adams().homology().unwrap(), IntMatrix::from_rows(&[[1, 0], [1, 1]]));
        assert!(PWMap::identity(3).homology().unwrap().is_identity());
        let g = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        assert_eq!(PWMap::global(g.clone()).homology().unwrap(), g.matrix().clone());
    }

    #[test]
    fn lipschitz_examples() {
        assert_eq!(PWMap::identity(2).lipschitz_bound(), int(1));
        assert_eq!(PWMap::adams().lipschitz_bound(), int(3));
        let g = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        assert_eq!(PWMap::global(g).lipschitz_bound(), int(3));
    }

    #[test]
    fn adams_torsion() {
        let f = PWMap::adams();
        assert!(f.torsion_perm(2).unwrap().is_identity());
        let p3 = f.torsion_perm(3).unwrap();
        assert!(!p3.is_identity());
        // (2/3, 0) ↦ (2/3, 1/3)
        let from = index_of_point(&[rat(2, 3), int(0)], 3).unwrap();
        let to = index_of_point(&[rat(2, 3), rat(1, 3)], 3).unwrap();
        assert_eq!(p3.images()[from], to);
        assert!(PWMap::identity(2).torsion_perm(5).unwrap().is_identity());
    }

    #[test]
    fn equality() {
        let f = PWMap::adams();
        assert!(f.equals(&f).unwrap());
        assert!(!f.equals(&PWMap::identity(2)).unwrap());
        let half = rat(1, 2);
        let split_identity = PWMap::new(
            2,
            Mode::Linear,
            vec![
                Piece::new(Polytope::from_box(&[int(0), int(0)], &[int(1), half.clone()]), ToralAffine::identity(2)),
                Piece::new(Polytope::from_box(&[int(0), half], &[int(1), int(1)]), ToralAffine::identity(2)),
            ],
        )
        .unwrap();
        assert!(split_identity.equals(&PWMap::identity(2)).unwrap());
        assert!(PWMap::identity(2).equals(&PWMap::identity(3)).is_err());
    }

    #[test]
    fn structural_errors() {
        let outside = Polytope::from_box(&[int(0), int(0)], &[int(2), int(1)]);
        let r = PWMap::new(2, Mode::Linear, vec![Piece::new(outside, ToralAffine::identity(2))]);
        assert!(matches!(r, Err(Error::Malformed(_))));
        let t = ToralAffine::new(IntMatrix::identity(2), vec![rat(1, 2), int(0)]).unwrap();
        let r = PWMap::new(2, Mode::Linear, vec![Piece::new(Polytope::unit_cube(2), t)]);
        assert!(r.is_err());
        let bad = r#"{"n":2,"mode":"linear","pieces":[{"halfspaces":[["-1","0","0"],["1","0","1"],["0","-1","0"],["0","1","1"]],"matrix":[["2","0"],["0","1"]]}]}"#;
        assert!(matches!(PWMap::from_json_str(bad), Err(Error::Malformed(_))));
    }

    #[test]
    fn json_roundtrip() {
        let f = PWMap::adams();
        let back = PWMap::from_json_str(&f.to_json_string()).unwrap();
        assert!(back.equals(&f).unwrap());
        assert_eq!(back.piece_count(), 2);
        assert!(matches!(PWMap::from_json_str("{\"n\": 2,"), Err(Error::Json(_))));
    }
}
