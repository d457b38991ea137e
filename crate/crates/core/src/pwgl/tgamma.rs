//! The sets `T_γ = {x : f(x) = γ x}` as finite unions of rational slices
//! of the pieces.

use num_traits::Zero;
use serde::Serialize;

use super::map::PWMap;
use crate::error::Result;
use crate::ratgeom::rat::{dot, fmt_vec};
use crate::ratgeom::{big, snf, Halfspace, Polytope, QVector, Rat};
use crate::torusmap::ToralAffine;

#[derive(Clone, Debug)]
pub struct Slice {
    pub piece: usize,
    pub region: Polytope,
}

#[derive(Clone, Debug)]
pub struct TGammaSlice {
    pub gamma: ToralAffine,
    pub slices: Vec<Slice>,
}

impl TGammaSlice {
    pub fn full_dimensional(&self) -> impl Iterator<Item = &Slice> {
        self.slices.iter().filter(|s| s.region.is_full_dim().unwrap_or(false))
    }

    /// Total n-volume of the slices (lower-dimensional ones contribute 0).
    pub fn volume(&self) -> Result<Rat> {
        self.slices.iter().try_fold(Rat::zero(), |acc, s| Ok(acc + s.region.volume()?))
    }

    pub fn to_json(&self) -> TGammaJson {
        TGammaJson {
            gamma: self.gamma.to_string(),
            slices: self
                .slices
                .iter()
                .map(|s| SliceJson {
                    piece: s.piece,
                    dim: s.region.affine_dim().ok().flatten().unwrap_or(0),
                    vertices: s.region.vertices().map(|v| v.iter().map(|x| fmt_vec(x)).collect()).unwrap_or_default(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TGammaJson {
    pub gamma: String,
    pub slices: Vec<SliceJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SliceJson {
    pub piece: usize,
    pub dim: usize,
    pub vertices: Vec<Vec<String>>,
}

/// Solves `(A - A_γ) x ≡ b_γ - b (mod Z^n)` on each piece. With
/// `U M V = D` and `w_i` the rows of `V⁻¹`, the solutions are
/// `w_i · x = (c_i + m_i) / d_i` for `c = U r` and integers `m_i`.
pub fn t_gamma(f: &PWMap, gamma: &ToralAffine) -> Result<TGammaSlice> {
    let n = f.dim();
    let mut slices = Vec::new();
    for (idx, p) in f.pieces().iter().enumerate() {
        let m = p.map.matrix().sub(gamma.matrix());
        let r: QVector = gamma.translation().iter().zip(p.map.translation()).map(|(x, y)| x - y).collect();
        let s = snf(&m);
        let rank = s.rank();
        let diag = s.diagonal();
        let c = s.u.mul_qvec(&r);
        if (rank..n).any(|i| !c[i].is_integer()) {
            continue;
        }
        let vinv = s.v.inverse_unimodular()?;
        let verts = p.region.vertices()?;
        // admissible levels per constrained coordinate
        let mut levels: Vec<Vec<Halfspace>> = Vec::with_capacity(rank);
        for i in 0..rank {
            let w: QVector = vinv.to_q().row(i).to_vec();
            let d = big(&diag[i]);
            let vals: Vec<Rat> = verts.iter().map(|v| dot(&w, v)).collect();
            let lo = vals.iter().min().expect("vertices").clone();
            let hi = vals.iter().max().expect("vertices").clone();
            let first = (&d * &lo - &c[i]).ceil().to_integer();
            let last = (&d * &hi - &c[i]).floor().to_integer();
            let mut opts = Vec::new();
            let mut k = first;
            while k <= last {
                let level = (&c[i] + big(&k)) / &d;
                opts.push(Halfspace::new(w.clone(), level));
                k += 1;
            }
            levels.push(opts);
        }
        let mut combos: Vec<Vec<Halfspace>> = vec![Vec::new()];
        for opts in &levels {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    opts.iter().map(move |h| {
                        let mut c = c.clone();
                        c.push(h.clone());
                        c
                    })
                })
                .collect();
        }
        for eqs in combos {
            let mut hs = p.region.halfspaces().to_vec();
            for h in eqs {
                hs.push(h.flipped());
                hs.push(h);
            }
            let region = Polytope::new(n, hs)?.canonical()?;
            if !region.is_empty()? {
                slices.push(Slice { piece: idx, region });
            }
        }
    }
    Ok(TGammaSlice { gamma: gamma.clone(), slices })
}
