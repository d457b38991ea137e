//! Fixed sets of toral affine maps and their smallness.
//!
//! The fixed set of `x ↦ A x + b` is the solution set of
//! `(A - I) x ≡ -b (mod Z^n)`. With `U (A - I) V = D` in Smith form and
//! `y = V⁻¹ x`, it decouples into `d_i y_i ≡ c_i` for `c = -U b`: each
//! nonzero `d_i` contributes `d_i` residues, each zero `d_i` either frees
//! `y_i` (when `c_i` is integral) or makes the set empty.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::affine::ToralAffine;
use crate::ratgeom::polytope::lex_cmp;
use crate::ratgeom::rat::{frac_vec, ser};
use crate::ratgeom::{big, snf, QVector, Rat};

/// Representatives are listed only up to this many components.
pub const MAX_REPRESENTATIVES: usize = 4096;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixedSetReport {
    pub n: usize,
    /// Dimension of each component subtorus; meaningless when `is_empty`.
    pub dim: usize,
    pub is_empty: bool,
    /// `None` exactly when the fixed set is empty.
    #[serde(serialize_with = "ser_opt_big")]
    pub component_count: Option<BigInt>,
    #[serde(serialize_with = "ser::vecs")]
    pub representatives: Vec<QVector>,
    pub representatives_truncated: bool,
    #[serde(serialize_with = "ser::vecs")]
    pub direction_basis: Vec<QVector>,
    pub is_small: bool,
    pub is_whole_space: bool,
}

fn ser_opt_big<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_str("empty"),
    }
}

impl FixedSetReport {
    pub fn codimension(&self) -> Option<usize> {
        (!self.is_empty).then(|| self.n - self.dim)
    }
}

pub fn fixed_set(g: &ToralAffine) -> FixedSetReport {
    let n = g.dim();
    let m = g.matrix().sub(&crate::ratgeom::IntMatrix::identity(n));
    let s = snf(&m);
    let diag = s.diagonal();
    let rank = s.rank();
    let c: QVector = s.u.mul_qvec(g.translation()).iter().map(|x| -x).collect();

    let solvable = (rank..n).all(|i| c[i].is_integer());
    let direction_basis: Vec<QVector> =
        (rank..n).map(|j| (0..n).map(|i| big(&s.v[(i, j)])).collect()).collect();
    let dim = n - rank;
    if !solvable {
        return FixedSetReport {
            n,
            dim,
            is_empty: true,
            component_count: None,
            representatives: vec![],
            representatives_truncated: false,
            direction_basis,
            is_small: false,
            is_whole_space: false,
        };
    }
    let count: BigInt = diag[..rank].iter().fold(BigInt::one(), |acc, d| acc * d);
    let limit = count.to_usize().filter(|&k| k <= MAX_REPRESENTATIVES);
    let mut representatives = Vec::new();
    if let Some(total) = limit {
        // enumerate residues m_i in 0..d_i, y_i = (c_i + m_i) / d_i
        let radices: Vec<usize> = diag[..rank].iter().map(|d| d.to_usize().unwrap_or(1)).collect();
        for idx in 0..total {
            let mut rem = idx;
            let mut y = vec![Rat::zero(); n];
            for i in (0..rank).rev() {
                let mi = rem % radices[i];
                rem /= radices[i];
                y[i] = (&c[i] + Rat::from_integer(mi.into())) / big(&diag[i]);
            }
            let x = s.v.mul_qvec(&y);
            representatives.push(frac_vec(&x));
        }
        representatives.sort_by(|a, b| lex_cmp(a, b));
    }
    FixedSetReport {
        n,
        dim,
        is_empty: false,
        component_count: Some(count),
        representatives_truncated: limit.is_none(),
        representatives,
        direction_basis,
        is_small: n >= 2 && dim <= n - 2,
        is_whole_space: dim == n,
    }
}

/// Whether `x` lies in the fixed set (exact congruence test).
pub fn in_fixed_set(g: &ToralAffine, x: &[Rat]) -> bool {
    g.fixes(x)
}

/// Whether `d` lies in the direction space `ker(A - I)` of the fixed set.
pub fn is_fixed_direction(g: &ToralAffine, d: &[Rat]) -> bool {
    g.matrix().mul_qvec(d).iter().zip(d).all(|(u, v)| (u - v).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratgeom::{rat, IntMatrix};

    fn q(v: &[(i64, i64)]) -> QVector {
        v.iter().map(|&(a, b)| rat(a, b)).collect()
    }

    #[test]
    fn cat_map() {
        let r = fixed_set(&ToralAffine::from_rows(&[[2, 1], [1, 1]]).unwrap());
        assert_eq!((r.dim, r.component_count.clone()), (0, Some(BigInt::one())));
        assert_eq!(r.representatives, vec![q(&[(0, 1), (0, 1)])]);
        assert!(r.is_small && !r.is_whole_space);
    }

    #[test]
    fn shear() {
        let r = fixed_set(&ToralAffine::from_rows(&[[1, 1], [0, 1]]).unwrap());
        assert_eq!(r.dim, 1);
        assert_eq!(r.component_count, Some(BigInt::one()));
        assert!(!r.is_small);
        // the circle x2 = 0
        assert_eq!(r.direction_basis.len(), 1);
        assert!(r.direction_basis[0][1].is_zero());
        assert_eq!(r.codimension(), Some(1));
    }

    #[test]
    fn rotation() {
        let r = fixed_set(&ToralAffine::from_rows(&[[0, -1], [1, 0]]).unwrap());
        assert_eq!(r.dim, 0);
        assert_eq!(r.component_count, Some(BigInt::from(2)));
        assert_eq!(r.representatives, vec![q(&[(0, 1), (0, 1)]), q(&[(1, 2), (1, 2)])]);
        assert!(r.is_small);
    }

    #[test]
    fn identity_and_empty() {
        let r = fixed_set(&ToralAffine::identity(2));
        assert!(r.is_whole_space && !r.is_small && r.dim == 2);
        let t = ToralAffine::new(IntMatrix::identity(2), q(&[(1, 2), (0, 1)])).unwrap();
        let r = fixed_set(&t);
        assert!(r.is_empty && !r.is_small && r.component_count.is_none());
        // shear with translation along the fixed circle: no fixed points
        let t = ToralAffine::new(IntMatrix::from_rows(&[[1, 1], [0, 1]]), q(&[(1, 3), (0, 1)])).unwrap();
        assert!(!fixed_set(&t).is_empty);
        let t = ToralAffine::new(IntMatrix::from_rows(&[[1, 1], [0, 1]]), q(&[(0, 1), (1, 3)])).unwrap();
        assert!(fixed_set(&t).is_empty);
    }

    #[test]
    fn representatives_are_fixed() {
        let g = ToralAffine::new(IntMatrix::from_rows(&[[3, 2], [1, 1]]), q(&[(1, 3), (1, 5)])).unwrap();
        let r = fixed_set(&g);
        assert!(!r.is_empty);
        for x in &r.representatives {
            assert!(g.fixes(x));
        }
    }
}
