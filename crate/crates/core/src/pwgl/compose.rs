//! Group operations: image tiling, composition, inversion and the
//! same-map merge that keeps piece counts in check.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::map::{Mode, PWMap, Piece};
use crate::error::{Error, Result};
use crate::ratgeom::polytope::{bboxes_disjoint, intersect};
use crate::ratgeom::rat::{add_vec, sub_vec};
use crate::ratgeom::{big, Halfspace, Polytope, QVector, Rat};
use crate::torusmap::ToralAffine;

/// One piece of the image of a piece, translated back into the unit cube.
#[derive(Clone, Debug)]
pub struct ImageTile {
    pub piece: usize,
    /// Integer vector subtracted from the lifted image.
    pub shift: Vec<BigInt>,
    pub region: Polytope,
}

fn floor(x: &Rat) -> BigInt {
    x.floor().to_integer()
}

fn ceil(x: &Rat) -> BigInt {
    x.ceil().to_integer()
}

fn shifts(lo: &[Rat], hi: &[Rat]) -> Vec<Vec<BigInt>> {
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for (l, h) in lo.iter().zip(hi) {
        let (a, b) = (floor(l), ceil(h) - 1);
        let mut next = Vec::new();
        for prefix in &out {
            let mut k = a.clone();
            while k <= b {
                let mut p = prefix.clone();
                p.push(k.clone());
                next.push(p);
                k += 1;
            }
        }
        out = next;
    }
    out
}

fn to_rat(k: &[BigInt]) -> QVector {
    k.iter().map(big).collect()
}

/// Full-dimensional tiles of the lifted image `A P + b`, each translated by
/// `-k` into `[0,1]^n`.
pub fn piece_tiles(index: usize, piece: &Piece) -> Result<Vec<ImageTile>> {
    let g = &piece.map;
    let image = piece.region.affine_image(&g.matrix().to_q(), g.translation())?;
    let Some((lo, hi)) = image.bbox()? else {
        return Ok(Vec::new());
    };
    let n = g.dim();
    let mut tiles = Vec::new();
    for k in shifts(&lo, &hi) {
        let kr = to_rat(&k);
        let hi_k: QVector = kr.iter().map(|x| x + Rat::from_integer(1.into())).collect();
        let mut hs = image.halfspaces().to_vec();
        let cell = Polytope::from_box(&kr, &hi_k);
        hs.extend(cell.halfspaces().iter().cloned());
        let t = Polytope::new(n, hs)?.canonical()?;
        if !t.is_full_dim()? {
            continue;
        }
        let neg: QVector = kr.iter().map(|x| -x).collect();
        tiles.push(ImageTile { piece: index, shift: k, region: t.translate(&neg)?.canonical()? });
    }
    Ok(tiles)
}

/// Image tiles of every piece, in piece order.
pub fn image_tiles(f: &PWMap) -> Result<Vec<ImageTile>> {
    let per: Vec<Result<Vec<ImageTile>>> =
        f.pieces().par_iter().enumerate().map(|(i, p)| piece_tiles(i, p)).collect();
    let mut out = Vec::new();
    for r in per {
        out.extend(r?);
    }
    Ok(out)
}

fn joint_mode(a: Mode, b: Mode) -> Mode {
    if a == Mode::Linear && b == Mode::Linear {
        Mode::Linear
    } else {
        Mode::Affine
    }
}

/// `f ∘ g`.
pub fn compose(f: &PWMap, g: &PWMap) -> Result<PWMap> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: g.dim() });
    }
    let n = f.dim();
    let tiles = image_tiles(g)?;
    let fboxes: Vec<(QVector, QVector)> = f
        .pieces()
        .iter()
        .map(|q| q.region.bbox().map(|b| b.expect("nonempty piece")))
        .collect::<Result<_>>()?;

    let parts: Vec<Result<Vec<Piece>>> = tiles
        .par_iter()
        .map(|tile| {
            let gp = &g.pieces()[tile.piece];
            let ginv = gp.map.inverse();
            let binv = ginv.matrix().to_q();
            // x = B⁻¹ (y + k − c)
            let offset = binv.mul_vec(&sub_vec(&to_rat(&tile.shift), gp.map.translation()));
            let tb = tile.region.bbox()?.expect("nonempty tile");
            let mut out = Vec::new();
            for (q, qb) in f.pieces().iter().zip(&fboxes) {
                if bboxes_disjoint(&tb, qb) {
                    continue;
                }
                let r = intersect(&tile.region, &q.region)?;
                if !r.is_full_dim()? {
                    continue;
                }
                let pulled = r.affine_image(&binv, &offset)?.canonical()?;
                out.push(Piece::new(pulled, q.map.compose(&gp.map)));
            }
            Ok(out)
        })
        .collect();
    let mut pieces = Vec::new();
    for p in parts {
        pieces.extend(p?);
    }
    if pieces.is_empty() {
        return Err(Error::InvalidOperand("composition has no pieces".into()));
    }
    simplify(&PWMap::from_parts_unchecked(n, joint_mode(f.mode(), g.mode()), pieces))
}

/// Inverse map: on the tile of piece `(P, A, b)` with shift `k` the inverse
/// is `y ↦ A⁻¹(y + k − b)`.
pub fn inverse(f: &PWMap) -> Result<PWMap> {
    let tiles = image_tiles(f)?;
    let pieces: Vec<Piece> = tiles
        .into_iter()
        .map(|t| {
            let p = &f.pieces()[t.piece];
            let ainv = p.map.inverse();
            let shift = ainv.matrix().to_q().mul_vec(&to_rat(&t.shift));
            let map = ToralAffine::new(ainv.matrix().clone(), add_vec(ainv.translation(), &shift))
                .expect("inverse of a unimodular map");
            Piece::new(t.region, map)
        })
        .collect();
    if pieces.is_empty() {
        return Err(Error::InvalidOperand("map has no image tiles".into()));
    }
    simplify(&PWMap::from_parts_unchecked(f.dim(), f.mode(), pieces))
}

/// Union of two same-map pieces when it is convex.
fn try_merge(p: &Polytope, q: &Polytope) -> Result<Option<Polytope>> {
    let (pb, qb) = (p.bbox()?.expect("nonempty"), q.bbox()?.expect("nonempty"));
    if bboxes_disjoint(&pb, &qb) {
        return Ok(None);
    }
    let (pv, qv) = (p.vertices()?, q.vertices()?);
    let mut hs: Vec<Halfspace> = Vec::new();
    for h in p.halfspaces() {
        if qv.iter().all(|v| h.contains(v)) {
            hs.push(h.clone());
        }
    }
    for h in q.halfspaces() {
        if pv.iter().all(|v| h.contains(v)) && !hs.contains(h) {
            hs.push(h.clone());
        }
    }
    let hull = match Polytope::new(p.ambient_dim(), hs)?.canonical() {
        Ok(h) => h,
        Err(Error::Unbounded) => return Ok(None),
        Err(e) => return Err(e),
    };
    if hull.volume()? != p.volume()? + q.volume()? {
        return Ok(None);
    }
    if !intersect(p, q)?.volume()?.is_zero() {
        return Ok(None);
    }
    Ok(Some(hull))
}

/// Greedily merges pieces carrying the same map whenever their union is
/// convex. Pieces keep the order of their first occurrence.
pub fn simplify(f: &PWMap) -> Result<PWMap> {
    let mut groups: Vec<(ToralAffine, Vec<Polytope>)> = Vec::new();
    let mut index: HashMap<ToralAffine, usize> = HashMap::new();
    for p in f.pieces() {
        let slot = *index.entry(p.map.clone()).or_insert_with(|| {
            groups.push((p.map.clone(), Vec::new()));
            groups.len() - 1
        });
        groups[slot].1.push(p.region.clone());
    }
    let merged: Vec<Result<Vec<Polytope>>> = groups.par_iter().map(|(_, regions)| merge_all(regions.clone())).collect();
    let mut pieces = Vec::new();
    for ((map, _), regions) in groups.iter().zip(merged) {
        for r in regions? {
            pieces.push(Piece::new(r, map.clone()));
        }
    }
    Ok(PWMap::from_parts_unchecked(f.dim(), f.mode(), pieces))
}

fn merge_all(mut regions: Vec<Polytope>) -> Result<Vec<Polytope>> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < regions.len() {
            let mut j = i + 1;
            while j < regions.len() {
                if let Some(u) = try_merge(&regions[i], &regions[j])? {
                    regions[i] = u;
                    regions.remove(j);
                    changed = true;
                    j = i + 1;
                } else {
                    j += 1;
                }
            }
            i += 1;
        }
        if !changed {
            return Ok(regions);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{int, rat, IntMatrix};

    #[test]
    fn identity_is_neutral() {
        let f = PWMap::adams();
        let id = PWMap::identity(2);
        let a = compose(&f, &id).unwrap();
        assert_eq!(a.piece_count(), 2);
        assert!(a.equals(&f).unwrap());
        assert!(compose(&id, &f).unwrap().equals(&f).unwrap());
    }

    #[test]
    fn adams_inverse() {
        let f = PWMap::adams();
        let g = inverse(&f).unwrap();
        assert_eq!(g.piece_count(), 2);
        let inv_shear = ToralAffine::from_rows(&[[1, 0], [-2, 1]]).unwrap();
        assert!(g.pieces().iter().any(|p| p.map == inv_shear));
        assert_eq!(g.apply(&[rat(3, 4), rat(1, 2)]).unwrap(), vec![rat(3, 4), int(0)]);
        assert!(compose(&f, &g).unwrap().is_identity());
        assert!(inverse(&PWMap::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn square_homology() {
        let f = PWMap::adams();
        let ff = compose(&f, &f).unwrap();
        let h = f.homology().unwrap();
        assert_eq!(ff.homology().unwrap(), h.mul(&h));
        assert_eq!(ff.total_volume().unwrap(), int(1));
    }

    #[test]
    fn global_left_multiplication() {
        let f = PWMap::adams();
        let gamma = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        let c = compose(&PWMap::global(gamma.clone()), &f).unwrap();
        let allowed: Vec<IntMatrix> =
            f.pieces().iter().map(|p| gamma.matrix().mul(p.map.matrix())).collect();
        assert!(c.pieces().iter().all(|p| allowed.contains(p.map.matrix())));
        let inv = inverse(&PWMap::global(gamma.clone())).unwrap();
        assert_eq!(inv.piece_count(), 1);
        assert_eq!(inv.pieces()[0].map.matrix(), &gamma.matrix().inverse_unimodular().unwrap());
        assert_eq!(IntMatrix::identity(2), compose(&inv, &PWMap::global(gamma)).unwrap().homology().unwrap());
    }

    #[test]
    fn affine_inverse() {
        let t = ToralAffine::new(IntMatrix::from_rows(&[[1, 1], [0, 1]]), vec![rat(1, 3), rat(1, 2)]).unwrap();
        let f = PWMap::global(t);
        let g = inverse(&f).unwrap();
        assert!(compose(&g, &f).unwrap().is_identity());
        let x = vec![rat(1, 5), rat(2, 7)];
        assert_eq!(g.apply(&f.apply(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn tiles_cover() {
        let f = PWMap::adams();
        let tiles = image_tiles(&f).unwrap();
        let total = tiles.iter().fold(Rat::zero(), |acc, t| acc + t.region.volume().unwrap());
        assert_eq!(total, int(1));
    }
}
