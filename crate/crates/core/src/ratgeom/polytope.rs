//! Bounded convex polytopes with rational data.
//!
//! A polytope is stored as a list of halfspaces `a . x <= b`. Its vertices,
//! affine hull and facets are computed on demand by double description on
//! the homogenized cone `{(x, t) : a . x <= b t, t >= 0}` and cached.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Signed, Zero};

use super::matrix::{nullspace, rank_of, QMatrix, QVector};
use super::rat::{dot, int, primitive, sub_vec, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Halfspace {
    pub a: QVector,
    pub b: Rat,
}

impl Halfspace {
    pub fn new(a: QVector, b: Rat) -> Self {
        Self { a, b }
    }

    /// `x[i] <= v`
    pub fn upper(n: usize, i: usize, v: Rat) -> Self {
        let mut a = vec![Rat::zero(); n];
        a[i] = Rat::one();
        Self { a, b: v }
    }

    /// `x[i] >= v`
    pub fn lower(n: usize, i: usize, v: Rat) -> Self {
        let mut a = vec![Rat::zero(); n];
        a[i] = -Rat::one();
        Self { a, b: -v }
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        dot(&self.a, x) <= self.b
    }

    pub fn is_tight(&self, x: &[Rat]) -> bool {
        dot(&self.a, x) == self.b
    }

    /// The complementary closed halfspace `a . x >= b`.
    pub fn flipped(&self) -> Self {
        Self { a: self.a.iter().map(|x| -x).collect(), b: -self.b.clone() }
    }

    fn normalized(&self) -> Self {
        let mut v = self.a.clone();
        v.push(self.b.clone());
        let mut p = primitive(&v);
        let b = p.pop().expect("nonempty");
        Self { a: p, b }
    }
}

/// Vertex/face data derived from the H-representation.
#[derive(Clone, Debug)]
struct Geometry {
    /// Lexicographically sorted, distinct.
    vertices: Vec<QVector>,
    /// `None` for the empty polytope.
    affine_dim: Option<usize>,
    /// Affine hull as pairs of opposite halfspaces.
    equalities: Vec<Halfspace>,
    /// Facet-defining halfspaces (relative to the affine hull) with the
    /// indices of the vertices they contain.
    facets: Vec<(Halfspace, Vec<usize>)>,
    volume: OnceLock<Rat>,
}

#[derive(Clone)]
pub struct Polytope {
    dim: usize,
    halfspaces: Vec<Halfspace>,
    geometry: OnceLock<std::result::Result<Geometry, Error>>,
}

impl fmt::Debug for Polytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.vertices() {
            Ok(v) => {
                let vs: Vec<Vec<String>> =
                    v.iter().map(|p| p.iter().map(|x| x.to_string()).collect()).collect();
                write!(f, "Polytope{vs:?}")
            }
            Err(e) => write!(f, "Polytope({e})"),
        }
    }
}

impl Polytope {
    pub fn new(dim: usize, halfspaces: Vec<Halfspace>) -> Result<Self> {
        if let Some(h) = halfspaces.iter().find(|h| h.a.len() != dim) {
            return Err(Error::DimensionMismatch { expected: dim, found: h.a.len() });
        }
        Ok(Self { dim, halfspaces, geometry: OnceLock::new() })
    }

    pub fn from_box(lo: &[Rat], hi: &[Rat]) -> Self {
        let n = lo.len();
        let mut hs = Vec::with_capacity(2 * n);
        for i in 0..n {
            hs.push(Halfspace::lower(n, i, lo[i].clone()));
            hs.push(Halfspace::upper(n, i, hi[i].clone()));
        }
        Self { dim: n, halfspaces: hs, geometry: OnceLock::new() }
    }

    pub fn unit_cube(n: usize) -> Self {
        Self::from_box(&vec![Rat::zero(); n], &vec![Rat::one(); n])
    }

    pub fn empty(n: usize) -> Self {
        let mut hs: Vec<Halfspace> = (0..n).map(|i| Halfspace::lower(n, i, Rat::zero())).collect();
        hs.push(Halfspace::new(vec![Rat::one(); n], -Rat::one()));
        if n == 0 {
            hs = vec![Halfspace::new(vec![], -Rat::one())];
        }
        Self { dim: n, halfspaces: hs, geometry: OnceLock::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    fn geometry(&self) -> Result<&Geometry> {
        self.geometry
            .get_or_init(|| compute_geometry(self.dim, &self.halfspaces))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.geometry()?.affine_dim.is_none())
    }

    /// Exact vertex set, lexicographically ordered.
    pub fn vertices(&self) -> Result<&[QVector]> {
        let g = self.geometry()?;
        if g.affine_dim.is_none() {
            return Err(Error::EmptyPolytope);
        }
        Ok(&g.vertices)
    }

    /// Affine dimension, `None` when empty.
    pub fn affine_dim(&self) -> Result<Option<usize>> {
        Ok(self.geometry()?.affine_dim)
    }

    pub fn is_full_dim(&self) -> Result<bool> {
        Ok(self.affine_dim()? == Some(self.dim))
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.halfspaces.iter().all(|h| h.contains(x))
    }

    /// Basis of the direction space of the affine hull.
    pub fn direction_basis(&self) -> Result<Vec<QVector>> {
        let v = self.vertices()?;
        let diffs: Vec<QVector> = v[1..].iter().map(|p| sub_vec(p, &v[0])).collect();
        let mut m = diffs.clone();
        let piv = super::matrix::rref(&mut m, self.dim);
        Ok(m.into_iter().take(piv.len()).collect())
    }

    /// Minimal H-representation: affine hull equalities followed by one
    /// halfspace per facet, with vertices carried over.
    pub fn canonical(&self) -> Result<Polytope> {
        let g = self.geometry()?.clone();
        let mut hs = g.equalities.clone();
        hs.extend(g.facets.iter().map(|(h, _)| h.clone()));
        if g.affine_dim.is_none() {
            return Ok(Polytope::empty(self.dim));
        }
        let p = Polytope { dim: self.dim, halfspaces: hs, geometry: OnceLock::new() };
        let _ = p.geometry.set(Ok(g));
        Ok(p)
    }

    pub fn bbox(&self) -> Result<Option<(QVector, QVector)>> {
        let g = self.geometry()?;
        if g.affine_dim.is_none() {
            return Ok(None);
        }
        let mut lo = g.vertices[0].clone();
        let mut hi = g.vertices[0].clone();
        for v in &g.vertices[1..] {
            for i in 0..self.dim {
                if v[i] < lo[i] {
                    lo[i] = v[i].clone();
                }
                if v[i] > hi[i] {
                    hi[i] = v[i].clone();
                }
            }
        }
        Ok(Some((lo, hi)))
    }

    /// Exact n-dimensional volume; zero for lower-dimensional polytopes.
    pub fn volume(&self) -> Result<Rat> {
        let g = self.geometry()?;
        if g.affine_dim != Some(self.dim) {
            return Ok(Rat::zero());
        }
        if let Some(v) = g.volume.get() {
            return Ok(v.clone());
        }
        let all: Vec<usize> = (0..g.vertices.len()).collect();
        let simplices = triangulate(&g.vertices, &all, self.dim, &g.facets);
        let mut fact = Rat::one();
        for k in 2..=self.dim {
            fact *= int(k as i64);
        }
        let mut total = Rat::zero();
        for s in simplices {
            let v0 = &g.vertices[s[0]];
            let rows: Vec<QVector> = s[1..].iter().map(|&i| sub_vec(&g.vertices[i], v0)).collect();
            let det = QMatrix::from_rows(rows)?.det()?;
            total += det.abs();
        }
        let vol = total / fact;
        let _ = g.volume.set(vol.clone());
        Ok(vol)
    }

    /// `{A x + b : x in P}` for invertible `A`.
    pub fn affine_image(&self, a: &QMatrix, b: &[Rat]) -> Result<Polytope> {
        if a.rows() != self.dim || a.cols() != self.dim || b.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: a.rows() });
        }
        let inv = a.inverse()?;
        let shift = inv.mul_vec(b);
        let map_h = |h: &Halfspace| {
            let a2 = inv.vec_mul(&h.a);
            let b2 = &h.b + dot(&h.a, &shift);
            Halfspace::new(a2, b2)
        };
        let hs = self.halfspaces.iter().map(map_h).collect();
        let out = Polytope { dim: self.dim, halfspaces: hs, geometry: OnceLock::new() };
        if let Some(Ok(g)) = self.geometry.get() {
            let mapped: Vec<QVector> = g
                .vertices
                .iter()
                .map(|v| a.mul_vec(v).into_iter().zip(b).map(|(x, t)| x + t).collect())
                .collect();
            let mut order: Vec<usize> = (0..mapped.len()).collect();
            order.sort_by(|&i, &j| lex_cmp(&mapped[i], &mapped[j]));
            let mut new_index = vec![0; mapped.len()];
            for (k, &i) in order.iter().enumerate() {
                new_index[i] = k;
            }
            let remap = |idx: &Vec<usize>| {
                let mut r: Vec<usize> = idx.iter().map(|&i| new_index[i]).collect();
                r.sort_unstable();
                r
            };
            let geo = Geometry {
                vertices: order.iter().map(|&i| mapped[i].clone()).collect(),
                affine_dim: g.affine_dim,
                equalities: g.equalities.iter().map(|h| map_h(h).normalized()).collect(),
                facets: g.facets.iter().map(|(h, t)| (map_h(h).normalized(), remap(t))).collect(),
                volume: OnceLock::new(),
            };
            if let (Some(v), Ok(det)) = (g.volume.get(), a.det()) {
                let _ = geo.volume.set(v * det.abs());
            }
            let _ = out.geometry.set(Ok(geo));
        }
        Ok(out)
    }

    pub fn translate(&self, t: &[Rat]) -> Result<Polytope> {
        self.affine_image(&QMatrix::identity(self.dim), t)
    }

    /// Polytope cut by one more halfspace, canonicalized.
    pub fn cut(&self, h: &Halfspace) -> Result<Polytope> {
        let mut hs = self.halfspaces.clone();
        hs.push(h.clone());
        Polytope::new(self.dim, hs)?.canonical()
    }

    /// Same point set (compared through vertices).
    pub fn same_set(&self, other: &Polytope) -> Result<bool> {
        let (a, b) = (self.geometry()?, other.geometry()?);
        Ok(a.affine_dim == b.affine_dim && a.vertices == b.vertices)
    }
}

/// `P ∩ Q`, canonicalized.
pub fn intersect(p: &Polytope, q: &Polytope) -> Result<Polytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, found: q.dim });
    }
    let mut hs = p.halfspaces.clone();
    hs.extend(q.halfspaces.iter().cloned());
    Polytope::new(p.dim, hs)?.canonical()
}

/// Quick rejection: bounding boxes disjoint (touching counts as overlap).
pub fn bboxes_disjoint(a: &(QVector, QVector), b: &(QVector, QVector)) -> bool {
    (0..a.0.len()).any(|i| a.1[i] < b.0[i] || b.1[i] < a.0[i])
}

pub fn lex_cmp(a: &[Rat], b: &[Rat]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Affine rank of a point set (`-1` reported as `None` for no points).
pub fn affine_rank(points: &[&QVector]) -> Option<usize> {
    let first = points.first()?;
    let n = first.len();
    let diffs: Vec<QVector> = points[1..].iter().map(|p| sub_vec(p, first)).collect();
    Some(rank_of(&diffs, n))
}

fn triangulate(
    verts: &[QVector],
    face: &[usize],
    k: usize,
    facets: &[(Halfspace, Vec<usize>)],
) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![face[0]]];
    }
    // vertices are lex-sorted, so the smallest index is the lex-least vertex
    let apex = face[0];
    let mut subfaces: Vec<Vec<usize>> = Vec::new();
    for (_, tight) in facets {
        let sub: Vec<usize> = face.iter().copied().filter(|i| tight.binary_search(i).is_ok()).collect();
        if sub.is_empty() || sub.len() == face.len() || sub.contains(&apex) {
            continue;
        }
        let pts: Vec<&QVector> = sub.iter().map(|&i| &verts[i]).collect();
        if affine_rank(&pts) != Some(k - 1) {
            continue;
        }
        if !subfaces.contains(&sub) {
            subfaces.push(sub);
        }
    }
    let mut out = Vec::new();
    for sub in subfaces {
        for mut s in triangulate(verts, &sub, k - 1, facets) {
            s.insert(0, apex);
            out.push(s);
        }
    }
    out
}

#[derive(Clone)]
struct Ray {
    v: QVector,
    tight: Vec<u64>,
}

fn bit_set(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn bits_and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Extreme rays of `{y : h . y <= 0 for h in rows}`; `None` if the cone is
/// not pointed.
fn double_description(rows: &[QVector], width: usize) -> Option<Vec<QVector>> {
    let words = rows.len().div_ceil(64).max(1);
    // greedy choice of an independent starting basis, in row order
    let mut basis: Vec<usize> = Vec::new();
    let mut acc: Vec<QVector> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        acc.push(r.clone());
        if rank_of(&acc, width) > basis.len() {
            basis.push(i);
            if basis.len() == width {
                break;
            }
        } else {
            acc.pop();
        }
    }
    if basis.len() < width {
        return None;
    }
    let b = QMatrix::from_rows(basis.iter().map(|&i| rows[i].clone()).collect()).ok()?;
    let binv = b.inverse().ok()?;
    let mut rays: Vec<Ray> = (0..width)
        .map(|j| {
            let v: QVector = (0..width).map(|i| -binv[(i, j)].clone()).collect();
            let mut tight = vec![0u64; words];
            for (k, &bi) in basis.iter().enumerate() {
                if k != j {
                    bit_set(&mut tight, bi);
                }
            }
            Ray { v: primitive(&v), tight }
        })
        .collect();

    for (k, h) in rows.iter().enumerate() {
        if basis.contains(&k) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| dot(h, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    bit_set(&mut r.tight, k);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut created = Vec::new();
        for &p in &pos {
            for &m in &neg {
                let common = bits_and(&rays[p].tight, &rays[m].tight);
                if popcount(&common) + 2 < width {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == m || !bits_subset(&common, &rays[r].tight));
                if !adjacent {
                    continue;
                }
                let v: QVector = rays[m]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(mv, pv)| &vals[p] * mv - &vals[m] * pv)
                    .collect();
                let mut tight = common;
                bit_set(&mut tight, k);
                created.push(Ray { v: primitive(&v), tight });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_positive() {
                continue;
            }
            if vals[i].is_zero() {
                bit_set(&mut r.tight, k);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }
    Some(rays.into_iter().map(|r| r.v).collect())
}

fn compute_geometry(n: usize, halfspaces: &[Halfspace]) -> std::result::Result<Geometry, Error> {
    let empty = || Geometry {
        vertices: vec![],
        affine_dim: None,
        equalities: vec![],
        facets: vec![],
        volume: OnceLock::new(),
    };
    if n == 0 {
        return Ok(if halfspaces.iter().all(|h| !h.b.is_negative()) {
            Geometry {
                vertices: vec![vec![]],
                affine_dim: Some(0),
                equalities: vec![],
                facets: vec![],
                volume: OnceLock::new(),
            }
        } else {
            empty()
        });
    }
    let mut rows: Vec<QVector> = halfspaces
        .iter()
        .map(|h| {
            let mut r = h.a.clone();
            r.push(-h.b.clone());
            r
        })
        .collect();
    let mut t_row = vec![Rat::zero(); n + 1];
    t_row[n] = -Rat::one();
    rows.push(t_row);
    let rays = double_description(&rows, n + 1).ok_or(Error::Unbounded)?;

    let mut vertices: Vec<QVector> = Vec::new();
    let mut recession = false;
    for r in &rays {
        let t = &r[n];
        if t.is_positive() {
            vertices.push(r[..n].iter().map(|x| x / t).collect());
        } else {
            recession = true;
        }
    }
    if vertices.is_empty() {
        return Ok(empty());
    }
    if recession {
        return Err(Error::Unbounded);
    }
    vertices.sort_by(|a, b| lex_cmp(a, b));
    vertices.dedup();

    let refs: Vec<&QVector> = vertices.iter().collect();
    let dim = affine_rank(&refs).expect("nonempty");
    let diffs: Vec<QVector> = vertices[1..].iter().map(|p| sub_vec(p, &vertices[0])).collect();
    let mut equalities = Vec::new();
    for c in nullspace(&diffs, n) {
        let c = primitive(&c);
        let rhs = dot(&c, &vertices[0]);
        equalities.push(Halfspace::new(c.clone(), rhs.clone()));
        equalities.push(Halfspace::new(c.iter().map(|x| -x).collect(), -rhs));
    }
    let mut facets: Vec<(Halfspace, Vec<usize>)> = Vec::new();
    if dim > 0 {
        for h in halfspaces {
            let tight: Vec<usize> = (0..vertices.len()).filter(|&i| h.is_tight(&vertices[i])).collect();
            if tight.is_empty() || tight.len() == vertices.len() {
                continue;
            }
            if facets.iter().any(|(_, t)| *t == tight) {
                continue;
            }
            let pts: Vec<&QVector> = tight.iter().map(|&i| &vertices[i]).collect();
            if affine_rank(&pts) == Some(dim - 1) {
                facets.push((h.normalized(), tight));
            }
        }
    }
    Ok(Geometry { vertices, affine_dim: Some(dim), equalities, facets, volume: OnceLock::new() })
}
