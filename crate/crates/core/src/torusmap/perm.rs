//! Permutations of the q-torsion grid `((1/q)Z/Z)^n`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratgeom::{Rat, rat};

/// `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(size: usize) -> Self {
        Self { images: (0..size).collect() }
    }

    /// Fails unless `images` is a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Integrity("grid map is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.len(), other.len());
        Self { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Self { images: inv }
    }

    /// Nontrivial cycles, each starting at its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cyc.push(j);
                j = self.images[j];
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }
}

/// Mixed-radix index of the grid point `k / q`, first coordinate most
/// significant.
pub fn grid_index(k: &[u64], q: u64) -> usize {
    k.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

/// Inverse of [`grid_index`], as a rational point in `[0,1)^n`.
pub fn grid_point(mut index: usize, q: u64, n: usize) -> Vec<Rat> {
    let mut out = vec![rat(0, 1); n];
    for i in (0..n).rev() {
        out[i] = rat((index % q as usize) as i64, q as i64);
        index /= q as usize;
    }
    out
}

/// Index of a point of `[0,1)^n` lying on the q-grid.
pub fn index_of_point(x: &[Rat], q: u64) -> Result<usize> {
    let qr = rat(q as i64, 1);
    let mut k = Vec::with_capacity(x.len());
    for c in x {
        let s = c * &qr;
        if !s.is_integer() {
            return Err(Error::GridNotPreserved { q: q as u32 });
        }
        let v: i64 = s.to_integer().try_into().map_err(|_| Error::Integrity("grid index overflow".into()))?;
        k.push(v.rem_euclid(q as i64) as u64);
    }
    Ok(grid_index(&k, q))
}

pub fn grid_size(q: u64, n: usize) -> usize {
    (q as usize).pow(n as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_roundtrip() {
        for i in 0..27 {
            assert_eq!(index_of_point(&grid_point(i, 3, 3), 3).unwrap(), i);
        }
        assert_eq!(grid_index(&[1, 0], 2), 2);
    }

    #[test]
    fn cycles_and_order() {
        let p = Permutation::from_images(vec![1, 2, 0, 4, 3, 5]).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 1, 2], vec![3, 4]]);
        assert_eq!(p.order(), 6);
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(Permutation::from_images(vec![0, 0]).is_err());
    }
}
