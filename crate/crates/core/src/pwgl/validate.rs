//! Exact homeomorphism check: cover, continuity across (glued) facets,
//! orientation and bijectivity of the image tiling.

use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::compose::{image_tiles, ImageTile};
use super::map::PWMap;
use crate::error::Result;
use crate::ratgeom::polytope::{bboxes_disjoint, intersect};
use crate::ratgeom::rat::{fmt_rat, fmt_vec, is_integral, sub_vec};
use crate::ratgeom::{int, Polytope, QVector, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    Cover,
    Continuity,
    Orientation,
    Tiling,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub invariant: Invariant,
    /// Offending piece pair (for tiling: the pieces whose images overlap).
    pub pieces: (usize, usize),
    /// Gluing translation applied to the second piece (continuity only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shift: Option<Vec<i64>>,
    /// Vertices of the shared facet or of the overlap.
    pub region: Vec<Vec<String>>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub n: usize,
    pub piece_count: usize,
    pub total_volume: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn count(&self, inv: Invariant) -> usize {
        self.violations.iter().filter(|v| v.invariant == inv).count()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            return write!(f, "valid homeomorphism, {} pieces", self.piece_count);
        }
        writeln!(f, "invalid: {} violation(s), {} pieces", self.violations.len(), self.piece_count)?;
        for v in &self.violations {
            write!(f, "  {:?} pieces {} and {}", v.invariant, v.pieces.0, v.pieces.1)?;
            if let Some(s) = &v.shift {
                write!(f, " (shift {s:?})")?;
            }
            writeln!(f, ": {}", v.detail)?;
        }
        Ok(())
    }
}

fn vertex_strings(p: &Polytope) -> Vec<Vec<String>> {
    p.vertices().map(|vs| vs.iter().map(|v| fmt_vec(v)).collect()).unwrap_or_default()
}

/// All `t` in `{-1,0,1}^n`.
fn unit_shifts(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-1..=1).map(move |k| {
                    let mut q = p.clone();
                    q.push(k);
                    q
                })
            })
            .collect();
    }
    out
}

fn lex_positive(t: &[i64]) -> bool {
    t.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
}

pub fn validate(f: &PWMap) -> Result<ValidationReport> {
    let n = f.dim();
    let pieces = f.pieces();
    let mut violations = Vec::new();

    let total = f.total_volume()?;
    if total != Rat::one() {
        violations.push(Violation {
            invariant: Invariant::Cover,
            pieces: (0, 0),
            shift: None,
            region: Vec::new(),
            detail: format!("total volume {} instead of 1", fmt_rat(&total)),
        });
    }

    let boxes: Vec<(QVector, QVector)> =
        pieces.iter().map(|p| p.region.bbox().map(|b| b.expect("nonempty"))).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..pieces.len()).flat_map(|i| (i..pieces.len()).map(move |j| (i, j))).collect();
    let shifts = unit_shifts(n);

    let found: Vec<Result<Vec<Violation>>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut out = Vec::new();
            let (p, q) = (&pieces[i], &pieces[j]);
            for t in &shifts {
                let zero = t.iter().all(|&x| x == 0);
                if i == j && !lex_positive(t) {
                    continue;
                }
                let tq: QVector = t.iter().map(|&x| int(x)).collect();
                let (qlo, qhi) = &boxes[j];
                let shifted = (
                    qlo.iter().zip(&tq).map(|(a, b)| a + b).collect(),
                    qhi.iter().zip(&tq).map(|(a, b)| a + b).collect(),
                );
                if bboxes_disjoint(&boxes[i], &shifted) {
                    continue;
                }
                let qt = q.region.translate(&tq)?;
                let common = intersect(&p.region, &qt)?;
                match common.affine_dim()? {
                    Some(d) if d == n && zero && i != j => out.push(Violation {
                        invariant: Invariant::Cover,
                        pieces: (i, j),
                        shift: None,
                        region: vertex_strings(&common),
                        detail: format!("overlap of volume {}", fmt_rat(&common.volume()?)),
                    }),
                    Some(d) if d + 1 == n => {
                        // x in P_i is identified with x - t in P_j
                        let vals: Vec<QVector> = common
                            .vertices()?
                            .iter()
                            .map(|v| sub_vec(&p.map.apply_lifted(v), &q.map.apply_lifted(&sub_vec(v, &tq))))
                            .collect();
                        let agree = vals.iter().all(|d| d == &vals[0]) && is_integral(&vals[0]);
                        if !agree {
                            let bad = vals.iter().find(|d| !is_integral(d)).unwrap_or(&vals[0]);
                            out.push(Violation {
                                invariant: Invariant::Continuity,
                                pieces: (i, j),
                                shift: (!zero).then(|| t.clone()),
                                region: vertex_strings(&common),
                                detail: format!("maps differ by {:?} on the shared facet", fmt_vec(bad)),
                            });
                        }
                    }
                    _ => {}
                }
            }
            Ok(out)
        })
        .collect();
    for v in found {
        violations.extend(v?);
    }

    let sign0 = pieces[0].map.matrix().det()?.is_positive();
    for (i, p) in pieces.iter().enumerate().skip(1) {
        if p.map.matrix().det()?.is_positive() != sign0 {
            violations.push(Violation {
                invariant: Invariant::Orientation,
                pieces: (0, i),
                shift: None,
                region: Vec::new(),
                detail: "determinant signs differ".into(),
            });
        }
    }

    violations.extend(tiling_violations(&image_tiles(f)?)?);

    Ok(ValidationReport {
        valid: violations.is_empty(),
        n,
        piece_count: pieces.len(),
        total_volume: fmt_rat(&total),
        violations,
    })
}

fn tiling_violations(tiles: &[ImageTile]) -> Result<Vec<Violation>> {
    let boxes: Vec<(QVector, QVector)> =
        tiles.iter().map(|t| t.region.bbox().map(|b| b.expect("nonempty"))).collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..tiles.len()).flat_map(|i| (i + 1..tiles.len()).map(move |j| (i, j))).collect();
    let found: Vec<Result<Option<Violation>>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            if bboxes_disjoint(&boxes[a], &boxes[b]) {
                return Ok(None);
            }
            let common = intersect(&tiles[a].region, &tiles[b].region)?;
            let vol = common.volume()?;
            if vol.is_zero() {
                return Ok(None);
            }
            Ok(Some(Violation {
                invariant: Invariant::Tiling,
                pieces: (tiles[a].piece, tiles[b].piece),
                shift: None,
                region: vertex_strings(&common),
                detail: format!("images overlap in volume {}", fmt_rat(&vol)),
            }))
        })
        .collect();
    let mut out = Vec::new();
    for v in found {
        out.extend(v?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pwgl::map::{Mode, Piece};
    use crate::ratgeom::rat;
    use crate::torusmap::ToralAffine;

    fn halves(right: [[i64; 2]; 2]) -> PWMap {
        let h = rat(1, 2);
        PWMap::new(
            2,
            Mode::Linear,
            vec![
                Piece::new(Polytope::from_box(&[int(0), int(0)], &[h.clone(), int(1)]), ToralAffine::identity(2)),
                Piece::new(Polytope::from_box(&[h, int(0)], &[int(1), int(1)]), ToralAffine::from_rows(&right).unwrap()),
            ],
        )
        .unwrap()
    }

    #[test]
    fn adams_is_valid() {
        let r = validate(&PWMap::adams()).unwrap();
        assert!(r.valid, "{r}");
        assert_eq!(r.to_string(), "valid homeomorphism, 2 pieces");
        assert!(validate(&PWMap::identity(2)).unwrap().valid);
        assert!(validate(&PWMap::identity(3)).unwrap().valid);
    }

    #[test]
    fn half_shear_breaks_continuity() {
        let r = validate(&halves([[1, 0], [1, 1]])).unwrap();
        assert!(!r.valid);
        let c: Vec<&Violation> = r.violations.iter().filter(|v| v.invariant == Invariant::Continuity).collect();
        assert!(!c.is_empty());
        let inner = c.iter().find(|v| v.shift.is_none()).expect("violation at x1 = 1/2");
        assert_eq!(inner.pieces, (0, 1));
        assert!(inner.region.iter().all(|v| v[0] == "1/2"));
    }

    #[test]
    fn overlap_and_orientation() {
        let f = PWMap::new(
            2,
            Mode::Linear,
            vec![
                Piece::new(Polytope::unit_cube(2), ToralAffine::identity(2)),
                Piece::new(
                    Polytope::from_box(&[int(0), int(0)], &[rat(1, 2), int(1)]),
                    ToralAffine::from_rows(&[[1, 0], [0, -1]]).unwrap(),
                ),
            ],
        )
        .unwrap();
        let r = validate(&f).unwrap();
        assert!(r.count(Invariant::Cover) >= 2);
        assert_eq!(r.count(Invariant::Orientation), 1);
        assert!(r.count(Invariant::Tiling) >= 1);
    }

    #[test]
    fn flip_is_valid() {
        let flip = PWMap::global(ToralAffine::from_rows(&[[0, 1], [1, 0]]).unwrap());
        assert!(validate(&flip).unwrap().valid);
        let minus = PWMap::global(ToralAffine::from_rows(&[[-1, 0], [0, -1]]).unwrap());
        assert!(validate(&minus).unwrap().valid);
    }
}
