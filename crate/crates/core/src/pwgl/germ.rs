//! Germs at a point: the tangent cones of the pieces meeting the point,
//! with a cyclic normal form in dimension 2.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::map::PWMap;
use crate::error::{Error, Result};
use crate::ratgeom::rat::{add_vec, dot, fmt_vec, frac_vec, primitive};
use crate::ratgeom::{int, IntMatrix, QVector, Rat};

/// Tangent cone `{d : a · d <= 0 for all normals a}` of one piece.
#[derive(Clone, Debug)]
pub struct Sector {
    pub piece: usize,
    /// Cube corner offset: the piece is met at `x + offset`.
    pub offset: Vec<i64>,
    pub normals: Vec<QVector>,
    pub matrix: IntMatrix,
}

/// Counterclockwise sector from ray `from` to ray `to`.
#[derive(Clone, Debug, PartialEq)]
pub struct AngularSector {
    pub from: QVector,
    pub to: QVector,
    pub matrix: IntMatrix,
    pub full: bool,
}

#[derive(Clone, Debug)]
pub struct Germ {
    pub basepoint: QVector,
    pub sectors: Vec<Sector>,
    /// Cyclically ordered, merged sectors; only for `n = 2`.
    pub angular: Option<Vec<AngularSector>>,
}

fn cross(a: &[Rat], b: &[Rat]) -> Rat {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn half(d: &[Rat]) -> u8 {
    if d[1].is_positive() || (d[1].is_zero() && d[0].is_positive()) {
        0
    } else {
        1
    }
}

/// Angular order of nonzero directions starting from the positive x-axis.
fn angle_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = cross(a, b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

fn same_ray(a: &[Rat], b: &[Rat]) -> bool {
    angle_cmp(a, b) == Ordering::Equal
}

fn in_cone(normals: &[QVector], d: &[Rat]) -> bool {
    normals.iter().all(|a| !dot(a, d).is_positive())
}

fn angular(s: &Sector) -> Option<AngularSector> {
    if s.normals.is_empty() {
        return Some(AngularSector { from: vec![int(1), int(0)], to: vec![int(1), int(0)], matrix: s.matrix.clone(), full: true });
    }
    let mut rays: Vec<QVector> = Vec::new();
    for a in &s.normals {
        let r = primitive(&[-a[1].clone(), a[0].clone()]);
        let minus: QVector = r.iter().map(|x| -x).collect();
        for cand in [r, minus] {
            if in_cone(&s.normals, &cand) && !rays.iter().any(|x| same_ray(x, &cand)) {
                rays.push(cand);
            }
        }
    }
    match rays.len() {
        2 => {
            let (a, b) = (&rays[0], &rays[1]);
            let c = cross(a, b);
            let (from, to) = if c.is_positive() {
                (a.clone(), b.clone())
            } else if c.is_negative() {
                (b.clone(), a.clone())
            } else {
                // half-plane {a · d <= 0}: from (-a2, a1) to its negation
                let n0 = &s.normals[0];
                let r = primitive(&[-n0[1].clone(), n0[0].clone()]);
                let minus = r.iter().map(|x| -x).collect();
                (r, minus)
            };
            Some(AngularSector { from, to, matrix: s.matrix.clone(), full: false })
        }
        _ => None,
    }
}

/// Tangent-cone data of `f` at `x` (taken mod 1).
pub fn germ_at(f: &PWMap, x: &[Rat]) -> Result<Germ> {
    let n = f.dim();
    if x.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: x.len() });
    }
    let x = frac_vec(x);
    let free: Vec<usize> = (0..n).filter(|&j| x[j].is_zero()).collect();
    let mut sectors = Vec::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut offset = vec![0i64; n];
        for (bit, &j) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                offset[j] = 1;
            }
        }
        let p = add_vec(&x, &offset.iter().map(|&k| int(k)).collect::<Vec<_>>());
        for (i, piece) in f.pieces().iter().enumerate() {
            if !piece.region.contains(&p) {
                continue;
            }
            let mut normals: Vec<QVector> = Vec::new();
            for h in piece.region.halfspaces() {
                if h.is_tight(&p) {
                    let a = primitive(&h.a);
                    if !normals.contains(&a) {
                        normals.push(a);
                    }
                }
            }
            sectors.push(Sector { piece: i, offset: offset.clone(), normals, matrix: piece.map.matrix().clone() });
        }
    }
    let angular = if n == 2 { Some(canonical_2d(&sectors)) } else { None };
    Ok(Germ { basepoint: x, sectors, angular })
}

fn canonical_2d(sectors: &[Sector]) -> Vec<AngularSector> {
    let mut arcs: Vec<AngularSector> = sectors.iter().filter_map(angular).collect();
    if let Some(full) = arcs.iter().find(|a| a.full) {
        return vec![full.clone()];
    }
    arcs.sort_by(|a, b| angle_cmp(&a.from, &b.from));
    let mut out: Vec<AngularSector> = Vec::new();
    for a in arcs {
        match out.last_mut() {
            Some(prev) if prev.matrix == a.matrix && same_ray(&prev.to, &a.from) => prev.to = a.to,
            _ => out.push(a),
        }
    }
    if out.len() > 1 {
        let last = out.len() - 1;
        if out[last].matrix == out[0].matrix && same_ray(&out[last].to, &out[0].from) {
            let tail = out.pop().expect("nonempty");
            out[0].from = tail.from;
        }
    }
    if out.len() == 1 && same_ray(&out[0].from, &out[0].to) {
        out[0].full = true;
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct GermJson {
    pub basepoint: Vec<String>,
    pub sectors: Vec<SectorJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub angular: Option<Vec<AngularJson>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SectorJson {
    pub piece: usize,
    pub offset: Vec<i64>,
    pub normals: Vec<Vec<String>>,
    pub matrix: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct AngularJson {
    pub from: Vec<String>,
    pub to: Vec<String>,
    pub matrix: String,
    pub full: bool,
}

impl Germ {
    pub fn to_json(&self) -> GermJson {
        GermJson {
            basepoint: fmt_vec(&self.basepoint),
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorJson {
                    piece: s.piece,
                    offset: s.offset.clone(),
                    normals: s.normals.iter().map(|a| fmt_vec(a)).collect(),
                    matrix: s.matrix.to_string(),
                })
                .collect(),
            angular: self.angular.as_ref().map(|v| {
                v.iter()
                    .map(|a| AngularJson {
                        from: fmt_vec(&a.from),
                        to: fmt_vec(&a.to),
                        matrix: a.matrix.to_string(),
                        full: a.full,
                    })
                    .collect()
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::rat;

    #[test]
    fn interior_point() {
        let g = germ_at(&PWMap::adams(), &[rat(1, 4), rat(1, 4)]).unwrap();
        assert_eq!(g.sectors.len(), 1);
        let a = g.angular.unwrap();
        assert_eq!(a.len(), 1);
        assert!(a[0].full && a[0].matrix.is_identity());
    }

    #[test]
    fn adams_boundary() {
        let g = germ_at(&PWMap::adams(), &[rat(1, 2), int(0)]).unwrap();
        assert_eq!(g.sectors.len(), 4);
        let a = g.angular.unwrap();
        assert_eq!(a.len(), 2);
        let left = a.iter().find(|s| s.matrix.is_identity()).unwrap();
        assert_eq!((left.from.clone(), left.to.clone()), (vec![int(0), int(1)], vec![int(0), int(-1)]));
        let right = a.iter().find(|s| !s.matrix.is_identity()).unwrap();
        assert_eq!(right.matrix, IntMatrix::from_rows(&[[1, 0], [2, 1]]));
        assert_eq!((right.from.clone(), right.to.clone()), (vec![int(0), int(-1)], vec![int(0), int(1)]));
    }

    #[test]
    fn identity_everywhere() {
        for x in [[int(0), int(0)], [rat(1, 3), int(0)], [rat(2, 5), rat(3, 7)]] {
            let a = germ_at(&PWMap::identity(2), &x).unwrap().angular.unwrap();
            assert_eq!(a.len(), 1);
            assert!(a[0].full);
        }
        let g = germ_at(&PWMap::identity(3), &[int(0), int(0), int(0)]).unwrap();
        assert_eq!(g.sectors.len(), 8);
        assert!(g.angular.is_none());
    }

    #[test]
    fn adams_at_origin() {
        // the glued line x1 = 0 ~ 1 meets both pieces
        let a = germ_at(&PWMap::adams(), &[int(0), int(0)]).unwrap().angular.unwrap();
        assert_eq!(a.len(), 2);
    }
}
