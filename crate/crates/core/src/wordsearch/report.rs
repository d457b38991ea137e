//! Ball, relation and growth reports for piecewise generators.

use serde::Serialize;

use super::ball::{enumerate_ball, Ball, BallOptions, Relation};
use super::word::Word;
use crate::error::{Error, Result};
use crate::pwgl::PWMap;

#[derive(Clone, Debug, Serialize)]
pub struct Representative {
    pub word: Word,
    pub pieces: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct BallReport {
    pub radius: usize,
    pub element_count: usize,
    pub sphere_sizes: Vec<usize>,
    pub cumulative: Vec<usize>,
    pub representatives: Vec<Representative>,
    pub relations: Vec<Relation>,
    pub fingerprint_collisions: usize,
}

impl BallReport {
    pub fn from_ball(ball: &Ball<PWMap>) -> Self {
        Self {
            radius: ball.radius,
            element_count: ball.len(),
            sphere_sizes: ball.sphere_sizes.clone(),
            cumulative: ball.cumulative_counts(),
            representatives: ball
                .elements
                .iter()
                .zip(&ball.words)
                .map(|(e, w)| Representative { word: w.clone(), pieces: e.piece_count() })
                .collect(),
            relations: ball.relations.clone(),
            fingerprint_collisions: ball.fingerprint_collisions.len(),
        }
    }
}

fn check_dims(gens: &[PWMap]) -> Result<()> {
    let first = gens.first().ok_or(Error::NoGenerators)?;
    match gens.iter().find(|g| g.dim() != first.dim()) {
        Some(g) => Err(Error::DimensionMismatch { expected: first.dim(), found: g.dim() }),
        None => Ok(()),
    }
}

pub fn ball_with(gens: &[PWMap], radius: usize, opts: &BallOptions) -> Result<Ball<PWMap>> {
    check_dims(gens)?;
    enumerate_ball(gens, radius, opts)
}

pub fn ball(gens: &[PWMap], radius: usize) -> Result<BallReport> {
    Ok(BallReport::from_ball(&ball_with(gens, radius, &BallOptions::default())?))
}

/// First-witness coincidences `(lhs, rhs)` among words of length `<= radius`.
pub fn relations(gens: &[PWMap], radius: usize) -> Result<Vec<Relation>> {
    Ok(ball_with(gens, radius, &BallOptions::default())?.relations)
}

/// Sphere sizes `|B(k)| - |B(k-1)|` for `k = 0..=radius`.
pub fn growth(gens: &[PWMap], radius: usize) -> Result<Vec<usize>> {
    Ok(ball_with(gens, radius, &BallOptions::default())?.sphere_sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torusmap::ToralAffine;

    fn global(rows: [[i64; 2]; 2]) -> PWMap {
        PWMap::global(ToralAffine::from_rows(&rows).unwrap())
    }

    #[test]
    fn trivial_generator() {
        let id = PWMap::identity(2);
        assert_eq!(growth(&[id.clone()], 3).unwrap(), vec![1, 0, 0, 0]);
        let rel = relations(&[id], 1).unwrap();
        assert_eq!(rel[0].lhs.to_signed(), vec![1]);
        assert!(rel[0].rhs.is_empty());
    }

    #[test]
    fn shear_growth() {
        assert_eq!(growth(&[global([[1, 1], [0, 1]])], 4).unwrap(), vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn rotation_relator() {
        let rel = relations(&[global([[0, -1], [1, 0]])], 4).unwrap();
        assert!(rel.iter().any(|r| r.relator.len() == 4));
        assert!(relations(&[global([[0, -1], [1, 0]])], 1).unwrap().is_empty());
    }

    #[test]
    fn adams_enlarges_ball() {
        let (s, t) = (global([[0, -1], [1, 0]]), global([[1, 1], [0, 1]]));
        let small = ball(&[s.clone(), t.clone()], 2).unwrap();
        let big = ball(&[s, t, PWMap::adams()], 2).unwrap();
        assert!(big.element_count > small.element_count);
        assert!(ball(&[PWMap::identity(2), PWMap::identity(3)], 1).is_err());
    }
}
