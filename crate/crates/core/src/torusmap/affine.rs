//! Affine automorphisms `x ↦ A x + b (mod Z^n)` of the torus.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::perm::{grid_point, grid_size, index_of_point, Permutation};
use crate::error::{Error, Result};
use crate::ratgeom::rat::{add_vec, fmt_vec, frac_vec, is_integral, parse_vec};
use crate::ratgeom::{int, IntMatrix, QVector, Rat};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ToralAffine {
    a: IntMatrix,
    /// Reduced into `[0, 1)^n`.
    b: QVector,
}

impl ToralAffine {
    pub fn new(a: IntMatrix, b: QVector) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
        }
        if b.len() != a.rows() {
            return Err(Error::DimensionMismatch { expected: a.rows(), found: b.len() });
        }
        let det = a.det()?;
        if det != 1.into() && det != (-1).into() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        Ok(Self { a, b: frac_vec(&b) })
    }

    pub fn linear(a: IntMatrix) -> Result<Self> {
        let n = a.rows();
        Self::new(a, vec![Rat::zero(); n])
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        Self::linear(IntMatrix::from_rows(rows))
    }

    pub fn identity(n: usize) -> Self {
        Self { a: IntMatrix::identity(n), b: vec![Rat::zero(); n] }
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.a
    }

    pub fn translation(&self) -> &[Rat] {
        &self.b
    }

    pub fn is_linear(&self) -> bool {
        self.b.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_identity() && self.is_linear()
    }

    /// `self ∘ other`: `(A1 A2, A1 b2 + b1 mod 1)`.
    pub fn compose(&self, other: &ToralAffine) -> ToralAffine {
        let a = self.a.mul(&other.a);
        let b = frac_vec(&add_vec(&self.a.mul_qvec(&other.b), &self.b));
        Self { a, b }
    }

    pub fn inverse(&self) -> ToralAffine {
        let inv = self.a.inverse_unimodular().expect("validated unimodular");
        let b: QVector = inv.mul_qvec(&self.b).iter().map(|x| -x).collect();
        Self { b: frac_vec(&b), a: inv }
    }

    pub fn pow(&self, k: u64) -> ToralAffine {
        let mut acc = Self::identity(self.dim());
        for _ in 0..k {
            acc = acc.compose(self);
        }
        acc
    }

    /// Lifted value `A x + b` (not reduced).
    pub fn apply_lifted(&self, x: &[Rat]) -> QVector {
        add_vec(&self.a.mul_qvec(x), &self.b)
    }

    pub fn apply(&self, x: &[Rat]) -> QVector {
        frac_vec(&self.apply_lifted(x))
    }

    /// `A x + b ≡ x (mod Z^n)`.
    pub fn fixes(&self, x: &[Rat]) -> bool {
        let y = self.apply_lifted(x);
        y.iter().zip(x).all(|(u, v)| (u - v).is_integer())
    }

    pub fn preserves_grid(&self, q: u64) -> bool {
        let qr = int(q as i64);
        is_integral(&self.b.iter().map(|x| x * &qr).collect::<Vec<_>>())
    }

    /// Action on the `q^n` points of the q-torsion grid.
    pub fn torsion_perm(&self, q: u64) -> Result<Permutation> {
        if q == 0 {
            return Err(Error::Malformed("q must be positive".into()));
        }
        if !self.preserves_grid(q) {
            return Err(Error::GridNotPreserved { q: q as u32 });
        }
        let n = self.dim();
        let images = (0..grid_size(q, n))
            .map(|i| index_of_point(&self.apply(&grid_point(i, q, n)), q))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    pub fn to_json(&self) -> ElementJson {
        ElementJson {
            n: self.dim(),
            matrix: self.a.to_strings(),
            translation: if self.is_linear() { None } else { Some(fmt_vec(&self.b)) },
        }
    }

    pub fn from_json(j: &ElementJson) -> Result<Self> {
        let a = IntMatrix::from_strings(&j.matrix)?;
        if a.rows() != j.n {
            return Err(Error::DimensionMismatch { expected: j.n, found: a.rows() });
        }
        let b = match &j.translation {
            Some(t) => parse_vec(t)?,
            None => vec![Rat::zero(); j.n],
        };
        Self::new(a, b)
    }
}

impl fmt::Debug for ToralAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ToralAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a)?;
        if !self.is_linear() {
            write!(f, " + ({})", fmt_vec(&self.b).join(", "))?;
        }
        Ok(())
    }
}

/// `{"n": int, "matrix": [[rat-string]], "translation": [rat-string]}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ElementJson {
    pub n: usize,
    pub matrix: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub translation: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::rat;

    #[test]
    fn construction_checks() {
        assert!(ToralAffine::from_rows(&[[2, 0], [0, 1]]).is_err());
        assert!(ToralAffine::from_rows(&[[1, 2, 3]]).is_err());
        let g = ToralAffine::new(IntMatrix::identity(2), vec![rat(3, 2), rat(-1, 3)]).unwrap();
        assert_eq!(g.translation(), &[rat(1, 2), rat(2, 3)]);
    }

    #[test]
    fn group_laws() {
        let g = ToralAffine::new(IntMatrix::from_rows(&[[2, 1], [1, 1]]), vec![rat(1, 3), rat(1, 2)]).unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        assert!(g.inverse().compose(&g).is_identity());
        let x = vec![rat(1, 5), rat(2, 7)];
        let h = ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap();
        assert_eq!(g.compose(&h).apply(&x), g.apply(&h.apply(&x)));
    }

    #[test]
    fn torsion_permutations() {
        assert!(ToralAffine::identity(2).torsion_perm(4).unwrap().is_identity());
        let cat = ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap();
        // grid order (0,0),(0,1/2),(1/2,0),(1/2,1/2): the origin is fixed,
        // the other three points form a 3-cycle
        let p = cat.torsion_perm(2).unwrap();
        assert_eq!(p.images(), &[0, 3, 1, 2]);
        assert_eq!(p.cycles(), vec![vec![1, 3, 2]]);
        let shear = ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap();
        assert_eq!(shear.torsion_perm(3).unwrap().order(), 3);
        let half = ToralAffine::new(IntMatrix::identity(2), vec![rat(1, 2), rat(0, 1)]).unwrap();
        assert!(half.torsion_perm(3).is_err());
        assert!(!half.torsion_perm(2).unwrap().is_identity());
    }

    #[test]
    fn json_roundtrip() {
        let g = ToralAffine::new(IntMatrix::from_rows(&[[0, -1], [1, 0]]), vec![rat(1, 2), rat(0, 1)]).unwrap();
        let s = serde_json::to_string(&g.to_json()).unwrap();
        assert_eq!(s, r#"{"n":2,"matrix":[["0","-1"],["1","0"]],"translation":["1/2","0"]}"#);
        let back: ElementJson = serde_json::from_str(&s).unwrap();
        assert_eq!(ToralAffine::from_json(&back).unwrap(), g);
    }
}
